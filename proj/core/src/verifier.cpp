#include "ramsey/verifier.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ramsey/colouring_io.hpp"
#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

/// Advances `subset` (ascending indices into 0..n-1) to the next k-subset in
/// lexicographic order; false after the last one.
bool next_subset(std::vector<Vertex>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (subset[i] < n - k + i) {
      ++subset[i];
      for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool all_pairs_coloured(const Colouring& c, const std::vector<Vertex>& subset, ColourId colour) {
  std::size_t matching = 0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) matching += c.at(subset[a], subset[b]) == colour;
  }
  return matching == subset.size() * (subset.size() - 1) / 2;
}

/// Calls visit(subset, colour) for every monochromatic target subset; stops when visit returns false.
template <typename Visit>
void scan_subsets(const Colouring& c, const Problem& prob, Visit&& visit) {
  prob.check_compatible(c);
  const std::size_t n = c.n_vertices();
  for (std::size_t i = 0; i < prob.n_colours(); ++i) {
    const auto k = static_cast<std::size_t>(prob.clique_size(i));
    if (k > n) continue;
    std::vector<Vertex> subset(k);
    std::iota(subset.begin(), subset.end(), Vertex{0});
    do {
      if (all_pairs_coloured(c, subset, static_cast<ColourId>(i))) {
        if (!visit(subset, static_cast<ColourId>(i))) return;
      }
    } while (next_subset(subset, n));
  }
}

std::string format_weights(const std::vector<double>& weights) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", weights[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

std::string format_sizes(const std::vector<int>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sizes[i]);
  }
  return out;
}

}  // namespace

std::string Violation::describe() const {
  std::string out = "{";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(vertices[i]);
  }
  return out + "} colour " + std::to_string(colour);
}

std::vector<std::uint64_t> naive_mono_counts(const Colouring& c, const Problem& prob) {
  std::vector<std::uint64_t> counts(prob.n_colours(), 0);
  scan_subsets(c, prob, [&](const std::vector<Vertex>&, ColourId colour) {
    ++counts[colour];
    return true;
  });
  return counts;
}

double naive_energy(const Colouring& c, const Problem& prob) {
  const auto counts = naive_mono_counts(c, prob);
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) total += prob.weight(i) * static_cast<double>(counts[i]);
  return total;
}

std::optional<Violation> find_violation(const Colouring& c, const Problem& prob) {
  std::optional<Violation> found;
  scan_subsets(c, prob, [&](const std::vector<Vertex>& subset, ColourId colour) {
    found = Violation{subset, colour};
    return false;
  });
  return found;
}

bool verify_clique_free(const Colouring& c, const Problem& prob) { return !find_violation(c, prob); }

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

Certificate::Certificate(Problem problem, Colouring colouring, std::string verified_at)
    : problem_(std::move(problem)),
      colouring_(std::move(colouring)),
      verified_at_(std::move(verified_at)),
      hash_algorithm_(kHashAlgorithm),
      checksum_(sha256_hex(to_canonical_string(colouring_))) {}

std::string Certificate::statement() const {
  return problem_.label() + " >= " + std::to_string(implied_bound());
}

void Certificate::write(std::ostream& out) const {
  out << kCertificateHeader << '\n'
      << "problem: " << problem_.label() << '\n'
      << "clique_sizes: " << format_sizes(problem_.clique_sizes()) << '\n'
      << "weights: " << format_weights(problem_.weights()) << '\n'
      << "bound: " << implied_bound() << '\n'
      << "statement: " << statement() << '\n'
      << "hash_algorithm: " << hash_algorithm_ << '\n'
      << "checksum: " << checksum_ << '\n'
      << "verified_at: " << verified_at_ << '\n'
      << '\n';
  write_colouring(out, colouring_);
}

void Certificate::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write(out);
}

Certificate make_certificate(const Colouring& c, const Problem& prob) {
  if (const auto violation = find_violation(c, prob)) {
    throw VerificationError("not clique-free for " + prob.label() + ": monochromatic clique " +
                            violation->describe());
  }
  return Certificate(prob, c, utc_timestamp());
}

Certificate read_certificate(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCertificateHeader) {
    throw ParseError("missing certificate header '" + std::string(kCertificateHeader) + "'");
  }
  std::map<std::string, std::string> fields;
  while (std::getline(in, line) && !line.empty()) {
    const auto colon = line.find(": ");
    if (colon == std::string::npos) throw ParseError("malformed certificate line '" + line + "'");
    fields[line.substr(0, colon)] = line.substr(colon + 2);
  }
  auto field = [&](const std::string& key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw ParseError("certificate is missing '" + key + "'");
    return it->second;
  };

  std::optional<Problem> problem;
  try {
    problem.emplace(parse_targets(field("clique_sizes")), parse_weights(field("weights")));
  } catch (const ConfigError& e) {
    throw ParseError(std::string("certificate problem: ") + e.what());
  }
  Colouring colouring = read_colouring(in);

  if (field("hash_algorithm") != kHashAlgorithm) {
    throw ParseError("unsupported hash algorithm '" + field("hash_algorithm") + "'");
  }
  if (field("bound") != std::to_string(colouring.n_vertices() + 1)) {
    throw VerificationError("stated bound " + field("bound") + " does not match n=" +
                            std::to_string(colouring.n_vertices()));
  }
  if (const auto violation = find_violation(colouring, *problem)) {
    throw VerificationError("certificate colouring has monochromatic clique " + violation->describe());
  }
  Certificate cert(std::move(*problem), std::move(colouring), field("verified_at"));
  if (cert.checksum_ != field("checksum")) {
    throw VerificationError("checksum mismatch: file says " + field("checksum") + ", colouring hashes to " +
                            cert.checksum_);
  }
  return cert;
}

Certificate load_certificate(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_certificate(in);
}

ExhaustiveMinimum min_energy_exhaustive(std::size_t n_vertices, const Problem& prob, std::uint64_t budget) {
  const std::size_t edges = edge_count(n_vertices);
  const std::size_t l = prob.n_colours();
  // l^edges with overflow detection.
  std::uint64_t required = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < edges; ++i) {
    if (required > budget / l) {
      overflow = true;
      break;
    }
    required *= l;
  }
  if (overflow || required > budget) {
    const double log2_required = static_cast<double>(edges) * std::log2(static_cast<double>(l));
    throw BudgetError("exhaustive enumeration needs " + std::to_string(l) + "^" + std::to_string(edges) +
                      " (about 2^" + std::to_string(static_cast<int>(std::ceil(log2_required))) +
                      ") colourings; budget is " + std::to_string(budget));
  }

  Colouring c(n_vertices, l);
  std::vector<ColourId> digits(edges, 0);
  ExhaustiveMinimum out;
  out.min_energy = std::numeric_limits<double>::infinity();
  for (std::uint64_t index = 0; index < required; ++index) {
    const double energy = naive_energy(c, prob);
    if (energy < out.min_energy) {
      out.min_energy = energy;
      out.minimizers = 1;
    } else if (energy == out.min_energy) {
      ++out.minimizers;
    }
    ++out.colourings_checked;
    // Odometer increment over edge colours.
    for (std::size_t i = 0; i < edges; ++i) {
      if (++digits[i] < l) {
        c.set_index(i, digits[i]);
        break;
      }
      digits[i] = 0;
      c.set_index(i, 0);
    }
  }
  return out;
}

}  // namespace ramsey
