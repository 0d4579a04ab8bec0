#include "ramsey/colouring_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_size_field(const std::string& token, std::string_view key, const std::string& line) {
  if (token.rfind(key, 0) != 0 || token.size() <= key.size() || token[key.size()] != '=') {
    throw ParseError("malformed size line '" + line + "': expected '" + std::string(key) + "=<int>'");
  }
  std::size_t value = 0;
  const char* first = token.data() + key.size() + 1;
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("malformed size line '" + line + "': bad value for " + std::string(key));
  }
  return value;
}

}  // namespace

void write_colouring(std::ostream& out, const Colouring& c) {
  const std::size_t n = c.n_vertices();
  out << kColouringHeader << '\n' << "n=" << n << " colours=" << c.n_colours() << '\n';
  for (Vertex p = 0; p + 1 < n; ++p) {
    for (Vertex q = p + 1; q < n; ++q) {
      if (q != p + 1) out << ' ';
      out << static_cast<int>(c.at(p, q));
    }
    out << '\n';
  }
}

std::string to_canonical_string(const Colouring& c) {
  std::ostringstream out;
  write_colouring(out, c);
  return out.str();
}

Colouring read_colouring(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input: missing colouring header");
  line = trim(line);
  if (line != kColouringHeader) {
    if (line.rfind("ramsey-colouring ", 0) == 0) {
      throw ParseError("unsupported colouring version '" + line.substr(17) + "' (expected v1)");
    }
    throw ParseError("missing colouring header, got '" + line + "'");
  }

  if (!std::getline(in, line)) throw ParseError("truncated: missing size line");
  line = trim(line);
  std::istringstream sizes(line);
  std::string n_token;
  std::string l_token;
  std::string extra;
  sizes >> n_token >> l_token;
  if (n_token.empty() || l_token.empty() || (sizes >> extra)) {
    throw ParseError("malformed size line '" + line + "'");
  }
  const std::size_t n = parse_size_field(n_token, "n", line);
  const std::size_t l = parse_size_field(l_token, "colours", line);
  if (n < 2) throw ParseError("n must be >= 2, got " + std::to_string(n));
  if (l < 2 || l > 255) throw ParseError("colours must be in [2,255], got " + std::to_string(l));

  std::vector<ColourId> edges;
  edges.reserve(edge_count(n));
  for (std::size_t p = 0; p + 1 < n; ++p) {
    if (!std::getline(in, line)) {
      throw ParseError("truncated: expected " + std::to_string(n - 1) + " rows, got " + std::to_string(p));
    }
    std::istringstream row(line);
    std::string token;
    std::size_t count = 0;
    while (row >> token) {
      unsigned value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("row " + std::to_string(p) + ": bad colour id '" + token + "'");
      }
      if (value >= l) {
        throw ParseError("row " + std::to_string(p) + ": colour id " + std::to_string(value) +
                         " >= colours=" + std::to_string(l));
      }
      edges.push_back(static_cast<ColourId>(value));
      ++count;
    }
    const std::size_t expected = n - 1 - p;
    if (count != expected) {
      throw ParseError("row " + std::to_string(p) + ": expected " + std::to_string(expected) +
                       " entries, got " + std::to_string(count));
    }
  }
  while (std::getline(in, line)) {
    if (!trim(line).empty()) throw ParseError("unexpected trailing content '" + line + "'");
  }
  return Colouring(n, l, std::move(edges));
}

Colouring parse_colouring(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_colouring(in);
}

Colouring load_colouring(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_colouring(in);
}

void save_colouring(const std::filesystem::path& path, const Colouring& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_colouring(out, c);
}

}  // namespace ramsey
