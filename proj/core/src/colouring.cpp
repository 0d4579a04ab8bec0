#include "ramsey/colouring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

constexpr std::int64_t kMaxDenominator = 10000;
constexpr std::int64_t kMaxScale = std::int64_t{1} << 40;

/// Smallest d <= kMaxDenominator with value * d integral (to 1e-9 relative), or nullopt.
std::optional<std::int64_t> small_denominator(double value) {
  for (std::int64_t d = 1; d <= kMaxDenominator; ++d) {
    const double scaled = value * static_cast<double>(d);
    if (std::abs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, scaled)) return d;
  }
  return std::nullopt;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    parts.push_back(first == std::string::npos ? std::string{} : item.substr(first, last - first + 1));
  }
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

}  // namespace

Edge Edge::between(Vertex a, Vertex b) {
  if (a == b) throw PreconditionError("self-edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return a < b ? Edge{a, b} : Edge{b, a};
}

Colouring::Colouring(std::size_t n_vertices, std::size_t n_colours, ColourId fill)
    : n_(n_vertices), l_(n_colours) {
  if (n_ < 2) throw PreconditionError("a colouring needs at least 2 vertices");
  if (l_ < 2 || l_ > 255) throw PreconditionError("colour count must be in [2, 255]");
  if (fill >= l_) throw PreconditionError("fill colour out of range");
  edges_.assign(edge_count(n_), fill);
}

Colouring::Colouring(std::size_t n_vertices, std::size_t n_colours, std::vector<ColourId> edges)
    : n_(n_vertices), l_(n_colours), edges_(std::move(edges)) {
  if (n_ < 2) throw PreconditionError("a colouring needs at least 2 vertices");
  if (l_ < 2 || l_ > 255) throw PreconditionError("colour count must be in [2, 255]");
  if (edges_.size() != edge_count(n_)) {
    throw PreconditionError("expected " + std::to_string(edge_count(n_)) + " edges, got " +
                            std::to_string(edges_.size()));
  }
  for (const ColourId c : edges_) {
    if (c >= l_) throw PreconditionError("colour id " + std::to_string(c) + " >= " + std::to_string(l_));
  }
}

void Colouring::check_edge(const Edge& e) const {
  if (!(e.p < e.q && e.q < n_)) {
    throw PreconditionError("edge (" + std::to_string(e.p) + "," + std::to_string(e.q) +
                            ") invalid for N=" + std::to_string(n_));
  }
}

ColourId Colouring::colour(const Edge& e) const {
  check_edge(e);
  return at(e);
}

void Colouring::set(const Edge& e, ColourId c) {
  check_edge(e);
  if (c >= l_) throw PreconditionError("colour id " + std::to_string(c) + " out of range");
  edges_[edge_index(n_, e.p, e.q)] = c;
}

Edge Colouring::edge_at(std::size_t index) const {
  if (index >= edges_.size()) throw PreconditionError("edge index out of range");
  Vertex p = 0;
  std::size_t row = n_ - 1;
  while (index >= row) {
    index -= row;
    ++p;
    --row;
  }
  return Edge{p, static_cast<Vertex>(p + 1 + index)};
}

std::size_t Colouring::index_of(const Edge& e) const {
  check_edge(e);
  return edge_index(n_, e.p, e.q);
}

Colouring Colouring::induced(std::span<const Vertex> keep) const {
  Colouring out(keep.size(), l_);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      if (keep[a] >= n_ || keep[b] >= n_ || keep[a] == keep[b]) {
        throw PreconditionError("induced: invalid vertex list");
      }
      out.edges_[edge_index(keep.size(), a, b)] = at(keep[a], keep[b]);
    }
  }
  return out;
}

Colouring Colouring::relabelled(std::span<const Vertex> perm) const {
  if (perm.size() != n_) throw PreconditionError("permutation size mismatch");
  std::vector<bool> seen(n_, false);
  for (const Vertex v : perm) {
    if (v >= n_ || seen[v]) throw PreconditionError("not a permutation");
    seen[v] = true;
  }
  Colouring out(n_, l_);
  for (Vertex p = 0; p < n_; ++p) {
    for (Vertex q = p + 1; q < n_; ++q) {
      const Vertex a = perm[p];
      const Vertex b = perm[q];
      out.edges_[a < b ? edge_index(n_, a, b) : edge_index(n_, b, a)] = at(p, q);
    }
  }
  return out;
}

Problem::Problem(std::vector<int> clique_sizes) : sizes_(std::move(clique_sizes)) {
  weights_.reserve(sizes_.size());
  for (const int x : sizes_) weights_.push_back(x > 0 ? 1.0 / x : 0.0);
  validate_and_scale();
}

Problem::Problem(std::vector<int> clique_sizes, std::vector<double> weights)
    : sizes_(std::move(clique_sizes)), weights_(std::move(weights)) {
  validate_and_scale();
}

void Problem::validate_and_scale() {
  if (sizes_.size() < 2) throw ConfigError("a Ramsey target needs at least 2 colours");
  if (sizes_.size() > 255) throw ConfigError("at most 255 colours are supported");
  if (weights_.size() != sizes_.size()) {
    throw ConfigError("got " + std::to_string(weights_.size()) + " weights for " +
                      std::to_string(sizes_.size()) + " colours");
  }
  for (const int x : sizes_) {
    if (x < 2) throw ConfigError("clique sizes must be >= 2");
  }
  for (const double k : weights_) {
    if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("weights must be positive and finite");
  }

  std::int64_t scale = 1;
  for (const double k : weights_) {
    const auto d = small_denominator(k);
    if (!d) return;
    scale = std::lcm(scale, *d);
    if (scale > kMaxScale) return;
  }
  std::vector<std::int64_t> scaled;
  for (const double k : weights_) {
    const double v = std::round(k * static_cast<double>(scale));
    if (v > 1e15) return;
    scaled.push_back(static_cast<std::int64_t>(v));
  }
  scaled_ = std::move(scaled);
}

int Problem::max_clique_size() const noexcept {
  return *std::max_element(sizes_.begin(), sizes_.end());
}

Problem Problem::with_unit_weights() const {
  return Problem(sizes_, std::vector<double>(sizes_.size(), 1.0));
}

std::string Problem::label() const {
  std::string out = "R(";
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sizes_[i]);
  }
  return out + ")";
}

void Problem::check_compatible(const Colouring& c) const {
  if (c.n_colours() != n_colours()) {
    throw ConfigError("colouring has " + std::to_string(c.n_colours()) + " colours but " + label() +
                      " needs " + std::to_string(n_colours()));
  }
}

std::vector<int> parse_targets(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split_commas(text)) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad clique size '" + part + "' in targets '" + text + "'");
    }
    if (used != part.size() || value < 2) {
      throw ConfigError("bad clique size '" + part + "' in targets '" + text + "'");
    }
    out.push_back(value);
  }
  if (out.size() < 2) throw ConfigError("targets need at least two comma-separated sizes");
  return out;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split_commas(text)) {
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad weight '" + part + "'");
    }
    if (used != part.size() || !(value > 0.0)) throw ConfigError("bad weight '" + part + "'");
    out.push_back(value);
  }
  return out;
}

}  // namespace ramsey
