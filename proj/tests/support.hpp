#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "ramsey/colouring.hpp"

namespace ramsey::test {

/// Five-guest party without a monochromatic triangle, blue (+1) as colour 0.
///
///      0  1  1 -1 -1
///      1  0 -1 -1  1
///      1 -1  0  1 -1
///     -1 -1  1  0  1
///     -1  1 -1  1  0
inline Colouring party5() {
  const int signs[5][5] = {{0, 1, 1, -1, -1}, {1, 0, -1, -1, 1}, {1, -1, 0, 1, -1}, {-1, -1, 1, 0, 1},
                           {-1, 1, -1, 1, 0}};
  Colouring c(5, 2);
  for (Vertex p = 0; p < 5; ++p) {
    for (Vertex q = p + 1; q < 5; ++q) c.set(Edge{p, q}, signs[p][q] == 1 ? 0 : 1);
  }
  return c;
}

/// Monochromatic subset counts by walking every vertex bitmask. Shares no code
/// with the library's enumerators; only usable for small N.
inline std::vector<std::uint64_t> bitmask_mono_counts(const Colouring& c, const std::vector<int>& sizes) {
  const std::size_t n = c.n_vertices();
  std::vector<std::uint64_t> counts(sizes.size(), 0);
  for (std::uint32_t set = 0; set < (std::uint32_t{1} << n); ++set) {
    const int k = std::popcount(set);
    for (std::size_t colour = 0; colour < sizes.size(); ++colour) {
      if (k != sizes[colour]) continue;
      bool mono = true;
      for (Vertex p = 0; p < n && mono; ++p) {
        if (!(set >> p & 1)) continue;
        for (Vertex q = p + 1; q < n; ++q) {
          if ((set >> q & 1) && c.at(p, q) != colour) {
            mono = false;
            break;
          }
        }
      }
      counts[colour] += mono;
    }
  }
  return counts;
}

inline double bitmask_energy(const Colouring& c, const Problem& prob) {
  const auto counts = bitmask_mono_counts(c, prob.clique_sizes());
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) total += prob.weight(i) * static_cast<double>(counts[i]);
  return total;
}

inline Colouring random_fill(std::size_t n, std::size_t l, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(l) - 1);
  Colouring c(n, l);
  for (std::size_t i = 0; i < c.n_edges(); ++i) c.set_index(i, static_cast<ColourId>(pick(rng)));
  return c;
}

inline const std::vector<std::vector<int>>& small_targets() {
  static const std::vector<std::vector<int>> targets = {{3, 3}, {3, 4}, {4, 4}, {3, 3, 3}};
  return targets;
}

}  // namespace ramsey::test
