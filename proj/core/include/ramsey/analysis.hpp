#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "ramsey/annealer.hpp"
#include "ramsey/colouring.hpp"

namespace ramsey {

/// Energies of every colouring one edge-recolouring away from a reference
/// colouring, with all K_i = 1 so energies are clique counts.
struct DosHistogram {
  /// energy -> fraction of neighbours; sums to 1.
  std::map<std::int64_t, double> density;
  std::map<std::int64_t, std::uint64_t> counts;
  /// N(N-1)/2 * (l-1)
  std::uint64_t neighbour_count = 0;
  std::int64_t base_energy = 0;
  /// The reference colouring itself had positive energy.
  bool off_manifold = false;

  double mean_energy() const;
};

/// Throws ConfigError unless every weight of `prob` is 1.
DosHistogram single_flip_dos(const Colouring& c, const Problem& prob);

/// Two columns, `energy density`, ascending energy.
void write_dos(std::ostream& out, const DosHistogram& dos);

/// Colouring in which edge (p, q) depends only on the circular distance
/// min(|p - q|, N - |p - q|). Entry d is the colour of distance d + 1.
class CyclicColouring {
 public:
  CyclicColouring(std::size_t n_vertices, std::size_t n_colours, std::vector<ColourId> class_colours);

  std::size_t n_vertices() const noexcept { return n_; }
  std::size_t n_colours() const noexcept { return l_; }
  const std::vector<ColourId>& class_colours() const noexcept { return classes_; }

  friend bool operator==(const CyclicColouring&, const CyclicColouring&) = default;

 private:
  std::size_t n_;
  std::size_t l_;
  std::vector<ColourId> classes_;
};

Colouring expand_cyclic(const CyclicColouring& cc);

enum class CyclicMode { Exhaustive, Annealed };

inline constexpr std::uint64_t kDefaultCyclicBudget = std::uint64_t{1} << 31;

struct CyclicSearchOptions {
  /// Largest l^floor(N/2) exhaustive mode will accept.
  std::uint64_t budget = kDefaultCyclicBudget;
  /// Annealed mode: temperature schedule, seed, and proposal budget (max_steps).
  AnnealConfig anneal;
};

struct CyclicSearchResult {
  std::optional<CyclicColouring> found;
  std::uint64_t candidates_tested = 0;
  /// Exhaustive mode: index of `found` in the enumeration order.
  std::optional<std::uint64_t> index;
};

/// Searches class assignments for one whose expansion is clique-free.
/// Exhaustive mode tests assignments in lexicographic order (class 0 most
/// significant) and returns the first hit; throws BudgetError when
/// l^floor(N/2) exceeds the budget. Annealed mode runs Metropolis moves on
/// single class colours with the usual reheat schedule. Any returned
/// assignment has passed the independent verifier.
CyclicSearchResult cyclic_search(const Problem& prob, std::size_t n_vertices, CyclicMode mode,
                                 const CyclicSearchOptions& options = {});

}  // namespace ramsey
