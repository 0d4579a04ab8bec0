#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ramsey {

using Vertex = std::uint32_t;
using ColourId = std::uint8_t;

/// Unordered vertex pair stored with p < q.
struct Edge {
  Vertex p = 0;
  Vertex q = 1;

  /// Normalizes the order; throws PreconditionError when a == b.
  static Edge between(Vertex a, Vertex b);

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Number of edges of the complete graph on n vertices.
constexpr std::size_t edge_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

/// Position of edge (p, q), p < q, in the row-major upper-triangle layout.
constexpr std::size_t edge_index(std::size_t n, std::size_t p, std::size_t q) noexcept {
  return p * (2 * n - p - 1) / 2 + (q - p - 1);
}

/// Edge colouring of the complete graph K_N with colours 0..l-1.
///
/// Only pairs p < q are stored, row by row: (0,1), (0,2), ..., (0,N-1), (1,2), ...
/// For two colours, id 0 corresponds to +1 (blue) and id 1 to -1 (red) in the
/// signed adjacency-matrix convention.
class Colouring {
 public:
  /// Uniform colouring, every edge `fill`.
  Colouring(std::size_t n_vertices, std::size_t n_colours, ColourId fill = 0);
  /// Takes ownership of an explicit edge vector; validates length and colour range.
  Colouring(std::size_t n_vertices, std::size_t n_colours, std::vector<ColourId> edges);

  std::size_t n_vertices() const noexcept { return n_; }
  std::size_t n_colours() const noexcept { return l_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }

  /// Unchecked access; p != q, both < N, order irrelevant.
  ColourId at(Vertex p, Vertex q) const noexcept {
    return p < q ? edges_[edge_index(n_, p, q)] : edges_[edge_index(n_, q, p)];
  }
  ColourId at(const Edge& e) const noexcept { return edges_[edge_index(n_, e.p, e.q)]; }
  ColourId at_index(std::size_t i) const noexcept { return edges_[i]; }

  /// Bounds-checked colour of edge e.
  ColourId colour(const Edge& e) const;
  /// Bounds-checked assignment.
  void set(const Edge& e, ColourId c);
  void set_index(std::size_t i, ColourId c) noexcept { edges_[i] = c; }

  Edge edge_at(std::size_t index) const;
  std::size_t index_of(const Edge& e) const;
  /// Throws PreconditionError unless 0 <= p < q < N.
  void check_edge(const Edge& e) const;

  std::span<const ColourId> edges() const noexcept { return edges_; }

  /// Colouring restricted to the vertices in `keep` (relabelled 0..k-1 in the given order).
  Colouring induced(std::span<const Vertex> keep) const;
  /// Colouring with vertex v mapped to perm[v].
  Colouring relabelled(std::span<const Vertex> perm) const;

  friend bool operator==(const Colouring&, const Colouring&) = default;

 private:
  std::size_t n_;
  std::size_t l_;
  std::vector<ColourId> edges_;
};

/// Ramsey target R(x_1, ..., x_l) together with per-colour clique weights K_i.
class Problem {
 public:
  /// Default weights K_i = 1 / x_i.
  explicit Problem(std::vector<int> clique_sizes);
  Problem(std::vector<int> clique_sizes, std::vector<double> weights);

  std::size_t n_colours() const noexcept { return sizes_.size(); }
  const std::vector<int>& clique_sizes() const noexcept { return sizes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  int clique_size(std::size_t colour) const { return sizes_.at(colour); }
  double weight(std::size_t colour) const { return weights_.at(colour); }
  int max_clique_size() const noexcept;

  /// Same targets with every K_i = 1.
  Problem with_unit_weights() const;

  /// Integer weights proportional to K_i (shared positive scale), when every
  /// K_i is rational with a denominator that divides the scale limit.
  const std::optional<std::vector<std::int64_t>>& scaled_weights() const noexcept {
    return scaled_;
  }

  /// "R(4,4)" style label.
  std::string label() const;

  /// Throws ConfigError if the colouring's colour count differs from l.
  void check_compatible(const Colouring& c) const;

  friend bool operator==(const Problem& a, const Problem& b) {
    return a.sizes_ == b.sizes_ && a.weights_ == b.weights_;
  }

 private:
  void validate_and_scale();

  std::vector<int> sizes_;
  std::vector<double> weights_;
  std::optional<std::vector<std::int64_t>> scaled_;
};

/// Parses "3,3,4" into clique sizes; throws ConfigError.
std::vector<int> parse_targets(const std::string& text);
/// Parses "0.25,0.25" into weights; throws ConfigError.
std::vector<double> parse_weights(const std::string& text);

}  // namespace ramsey
