#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ramsey/colouring.hpp"

namespace ramsey {

/// Result of evaluating the clique energy E = sum_i K_i * (#monochromatic x_i-cliques of colour i).
struct EnergyReport {
  double total = 0.0;
  std::vector<std::uint64_t> mono_counts;
  /// Sorted, duplicate-free edges lying in at least one counted clique.
  std::vector<Edge> hot_edges;
};

/// Monochromatic clique counts removed and added by recolouring one edge.
struct FlipCounts {
  std::uint64_t destroyed = 0;  // cliques of the old colour containing the edge
  std::uint64_t created = 0;    // cliques of the new colour containing the edge
};

/// 1 iff every pair in `vertices` has colour `colour`.
int clique_energy(const Colouring& c, std::span<const Vertex> vertices, ColourId colour);

/// sum_i K_i * counts[i], summed in colour order.
double weighted_energy(const Problem& prob, std::span<const std::uint64_t> counts);

/// Full evaluation with ordered enumeration and early loop exit.
EnergyReport total_energy(const Colouring& c, const Problem& prob);

/// Clique counts touched by recolouring `e` to `new_colour`. Only cliques that
/// contain both endpoints of `e` are enumerated.
FlipCounts flip_counts(const Colouring& c, const Problem& prob, const Edge& e, ColourId new_colour);

/// total_energy(after) - total_energy(before) for the recolouring; exactly 0 when
/// `new_colour` equals the current colour.
double delta_energy(const Colouring& c, const Problem& prob, const Edge& e, ColourId new_colour);

/// Copy of `c` with edge `e` recoloured.
Colouring apply_flip(const Colouring& c, const Edge& e, ColourId new_colour);

std::vector<Edge> hot_edges(const Colouring& c, const Problem& prob);

/// Incrementally maintained energy, clique counts, and hot-edge set for one
/// colouring under a sequence of single-edge recolourings.
///
/// For N <= 64 colour neighbourhoods are kept as bit masks and cliques through an
/// edge are counted inside the common neighbourhood of its endpoints; larger
/// graphs use the plain ordered enumeration.
class EnergyTracker {
 public:
  EnergyTracker(Colouring colouring, Problem problem);

  const Colouring& colouring() const noexcept { return colouring_; }
  const Problem& problem() const noexcept { return problem_; }
  double energy() const noexcept { return energy_; }
  /// Energy in units of the problem's integer weight scale, when one exists.
  std::optional<std::int64_t> scaled_energy() const;
  const std::vector<std::uint64_t>& mono_counts() const noexcept { return counts_; }

  FlipCounts evaluate(std::size_t edge_index, ColourId new_colour) const;
  double delta(std::size_t edge_index, ColourId new_colour) const;
  /// Recolours the edge and updates counts, energy, and hot edges. Returns the counts.
  FlipCounts apply(std::size_t edge_index, ColourId new_colour);

  /// Indices of edges in at least one monochromatic target clique (unordered).
  std::span<const std::uint32_t> hot_list() const noexcept { return hot_list_; }
  bool is_hot(std::size_t edge_index) const noexcept { return hot_count_[edge_index] > 0; }
  /// Number of monochromatic target cliques containing the edge.
  std::uint32_t hot_count(std::size_t edge_index) const noexcept { return hot_count_[edge_index]; }

  /// Snapshot in the same shape as total_energy().
  EnergyReport report() const;

 private:
  using Mask = std::uint64_t;

  Mask& adj(ColourId c, Vertex v) noexcept { return adj_[c * n_ + v]; }
  Mask adj(ColourId c, Vertex v) const noexcept { return adj_[c * n_ + v]; }

  std::uint64_t count_through(Vertex p, Vertex q, ColourId c) const;
  void update_through(Vertex p, Vertex q, ColourId c, int sign);
  void bump_hot(std::size_t edge_index, int sign);
  void rebuild();

  Colouring colouring_;
  Problem problem_;
  std::size_t n_;
  bool use_masks_;
  std::vector<Edge> endpoints_;
  std::vector<Mask> adj_;
  std::vector<std::uint64_t> counts_;
  double energy_ = 0.0;
  std::vector<std::uint32_t> hot_count_;
  std::vector<std::uint32_t> hot_list_;
  std::vector<std::int32_t> hot_pos_;
};

}  // namespace ramsey
