#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/colouring.hpp"

namespace ramsey {

// Ground-truth checks. Everything here walks every vertex subset and tests every
// pair; none of it goes through the pruned or incremental enumeration in energy.hpp.

/// A monochromatic target clique: vertex set (ascending) and its colour.
struct Violation {
  std::vector<Vertex> vertices;
  ColourId colour = 0;

  std::string describe() const;
};

/// Per-colour count of monochromatic x_i-subsets, by full subset enumeration.
std::vector<std::uint64_t> naive_mono_counts(const Colouring& c, const Problem& prob);
double naive_energy(const Colouring& c, const Problem& prob);

/// First monochromatic target clique in (colour, lexicographic subset) order.
std::optional<Violation> find_violation(const Colouring& c, const Problem& prob);
bool verify_clique_free(const Colouring& c, const Problem& prob);

inline constexpr std::string_view kCertificateHeader = "ramsey-certificate v1";
inline constexpr std::string_view kHashAlgorithm = "sha256";

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

/// A verified clique-free colouring, certifying R(x_1..x_l) >= N + 1.
///
/// Only produced by make_certificate() or by reading a certificate file, both of
/// which run the independent verifier first.
class Certificate {
 public:
  const Problem& problem() const noexcept { return problem_; }
  const Colouring& colouring() const noexcept { return colouring_; }
  std::size_t implied_bound() const noexcept { return colouring_.n_vertices() + 1; }
  const std::string& verified_at() const noexcept { return verified_at_; }
  const std::string& hash_algorithm() const noexcept { return hash_algorithm_; }
  /// Digest of the canonical colouring serialization.
  const std::string& checksum() const noexcept { return checksum_; }
  /// "R(4,4) >= 18"
  std::string statement() const;

  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;

 private:
  Certificate(Problem problem, Colouring colouring, std::string verified_at);

  friend Certificate make_certificate(const Colouring& c, const Problem& prob);
  friend Certificate read_certificate(std::istream& in);

  Problem problem_;
  Colouring colouring_;
  std::string verified_at_;
  std::string hash_algorithm_;
  std::string checksum_;
};

/// Verifies and certifies; throws VerificationError naming a violating clique.
Certificate make_certificate(const Colouring& c, const Problem& prob);

/// Parses a certificate file, re-verifies the colouring and checks the stored
/// checksum. Throws ParseError on malformed input and VerificationError when the
/// colouring or checksum does not hold up.
Certificate read_certificate(std::istream& in);
Certificate load_certificate(const std::filesystem::path& path);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

struct ExhaustiveMinimum {
  double min_energy = 0.0;
  std::uint64_t minimizers = 0;
  std::uint64_t colourings_checked = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 26;

/// Exact minimum of the clique energy over all l^(N(N-1)/2) colourings of K_N.
/// Throws BudgetError (naming the required count) when that exceeds `budget`.
ExhaustiveMinimum min_energy_exhaustive(std::size_t n_vertices, const Problem& prob,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace ramsey
