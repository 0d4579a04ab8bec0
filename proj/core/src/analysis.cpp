#include "ramsey/analysis.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "ramsey/energy.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/verifier.hpp"

namespace ramsey {

double DosHistogram::mean_energy() const {
  double mean = 0.0;
  for (const auto& [energy, density_at] : density) mean += static_cast<double>(energy) * density_at;
  return mean;
}

DosHistogram single_flip_dos(const Colouring& c, const Problem& prob) {
  for (const double k : prob.weights()) {
    if (k != 1.0) throw ConfigError("single-flip density of states needs all weights equal to 1");
  }
  const EnergyReport base = total_energy(c, prob);
  DosHistogram dos;
  dos.base_energy = static_cast<std::int64_t>(std::llround(base.total));
  dos.off_manifold = dos.base_energy != 0;
  const std::size_t l = c.n_colours();
  for (std::size_t i = 0; i < c.n_edges(); ++i) {
    const Edge e = c.edge_at(i);
    for (std::size_t colour = 0; colour < l; ++colour) {
      if (colour == c.at(e)) continue;
      const FlipCounts flip = flip_counts(c, prob, e, static_cast<ColourId>(colour));
      const std::int64_t energy =
          dos.base_energy + static_cast<std::int64_t>(flip.created) - static_cast<std::int64_t>(flip.destroyed);
      ++dos.counts[energy];
      ++dos.neighbour_count;
    }
  }
  for (const auto& [energy, count] : dos.counts) {
    dos.density[energy] = static_cast<double>(count) / static_cast<double>(dos.neighbour_count);
  }
  return dos;
}

void write_dos(std::ostream& out, const DosHistogram& dos) {
  const auto precision = out.precision(17);
  for (const auto& [energy, density] : dos.density) out << energy << ' ' << density << '\n';
  out.precision(precision);
}

CyclicColouring::CyclicColouring(std::size_t n_vertices, std::size_t n_colours, std::vector<ColourId> class_colours)
    : n_(n_vertices), l_(n_colours), classes_(std::move(class_colours)) {
  if (n_ < 2) throw PreconditionError("a cyclic colouring needs at least 2 vertices");
  if (l_ < 2 || l_ > 255) throw PreconditionError("colour count must be in [2, 255]");
  if (classes_.size() != n_ / 2) {
    throw PreconditionError("expected " + std::to_string(n_ / 2) + " distance classes, got " +
                            std::to_string(classes_.size()));
  }
  for (const ColourId c : classes_) {
    if (c >= l_) throw PreconditionError("class colour " + std::to_string(c) + " out of range");
  }
}

Colouring expand_cyclic(const CyclicColouring& cc) {
  const std::size_t n = cc.n_vertices();
  Colouring out(n, cc.n_colours());
  for (Vertex p = 0; p < n; ++p) {
    for (Vertex q = p + 1; q < n; ++q) {
      const std::size_t forward = q - p;
      const std::size_t distance = std::min(forward, n - forward);
      out.set_index(edge_index(n, p, q), cc.class_colours()[distance - 1]);
    }
  }
  return out;
}

namespace {

/// Clique test for circulant colourings on fewer than 64 vertices. Rotation
/// maps every monochromatic clique onto one through vertex 0, so it suffices
/// to look for an (x-1)-clique inside vertex 0's colour-c neighbourhood.
class CirculantChecker {
 public:
  CirculantChecker(std::size_t n, const Problem& prob)
      : n_(n), full_((std::uint64_t{1} << n) - 1), sizes_(prob.clique_sizes()), base_(prob.n_colours()) {}

  bool clique_free(const std::vector<ColourId>& classes) {
    std::fill(base_.begin(), base_.end(), 0);
    for (std::size_t j = 1; j < n_; ++j) {
      base_[classes[std::min(j, n_ - j) - 1]] |= std::uint64_t{1} << j;
    }
    for (std::size_t c = 0; c < sizes_.size(); ++c) {
      const auto x = static_cast<std::size_t>(sizes_[c]);
      if (x > n_) continue;
      if (has_clique(base_[c], base_[c], static_cast<int>(x) - 1)) return false;
    }
    return true;
  }

 private:
  std::uint64_t rotate(std::uint64_t mask, std::size_t v) const {
    if (v == 0) return mask;
    return ((mask << v) | (mask >> (n_ - v))) & full_;
  }

  bool has_clique(std::uint64_t base, std::uint64_t cand, int k) const {
    if (k == 0) return true;
    if (std::popcount(cand) < k) return false;
    while (cand) {
      const auto v = static_cast<std::size_t>(std::countr_zero(cand));
      cand &= cand - 1;
      if (has_clique(base, cand & rotate(base, v), k - 1)) return true;
    }
    return false;
  }

  std::size_t n_;
  std::uint64_t full_;
  std::vector<int> sizes_;
  std::vector<std::uint64_t> base_;
};

CyclicSearchResult exhaustive_cyclic(const Problem& prob, std::size_t n, const CyclicSearchOptions& options) {
  const std::size_t classes = n / 2;
  const std::size_t l = prob.n_colours();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < classes; ++i) {
    if (total > options.budget / l) {
      throw BudgetError("exhaustive cyclic search needs " + std::to_string(l) + "^" + std::to_string(classes) +
                        " class assignments; budget is " + std::to_string(options.budget));
    }
    total *= l;
  }

  CyclicSearchResult result;
  std::vector<ColourId> digits(classes, 0);
  std::optional<CirculantChecker> fast;
  if (n < 64) fast.emplace(n, prob);

  for (std::uint64_t index = 0; index < total; ++index) {
    ++result.candidates_tested;
    bool ok = false;
    if (fast) {
      ok = fast->clique_free(digits);
    } else {
      ok = total_energy(expand_cyclic(CyclicColouring(n, l, digits)), prob).total == 0.0;
    }
    if (ok) {
      result.found.emplace(n, l, digits);
      result.index = index;
      return result;
    }
    // Odometer with the last class least significant.
    for (std::size_t d = classes; d-- > 0;) {
      if (++digits[d] < l) break;
      digits[d] = 0;
    }
  }
  return result;
}

CyclicSearchResult annealed_cyclic(const Problem& prob, std::size_t n, const CyclicSearchOptions& options) {
  const AnnealConfig& cfg = options.anneal;
  cfg.validate();
  const std::size_t classes = n / 2;
  const std::size_t l = prob.n_colours();
  Rng rng(cfg.rng_seed);
  std::uniform_int_distribution<std::size_t> pick_colour(0, l - 1);
  std::uniform_int_distribution<std::size_t> pick_class(0, classes - 1);

  std::vector<ColourId> current(classes);
  for (auto& c : current) c = static_cast<ColourId>(pick_colour(rng));

  const auto& scaled = prob.scaled_weights();
  auto evaluate = [&](const std::vector<ColourId>& assignment) {
    return total_energy(expand_cyclic(CyclicColouring(n, l, assignment)), prob).mono_counts;
  };
  auto scaled_of = [&](const std::vector<std::uint64_t>& counts) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) total += (*scaled)[i] * static_cast<std::int64_t>(counts[i]);
    return total;
  };

  std::vector<std::uint64_t> counts = evaluate(current);
  double energy = weighted_energy(prob, counts);
  TemperatureSchedule schedule{cfg.initial_temperature, energy};

  CyclicSearchResult result;
  ++result.candidates_tested;
  std::uint64_t steps = 0;
  while (energy > 0.0 && steps < cfg.max_steps) {
    for (std::size_t s = 0; s < classes && energy > 0.0 && steps < cfg.max_steps; ++s, ++steps) {
      const std::size_t d = pick_class(rng);
      std::vector<ColourId> proposal = current;
      proposal[d] = propose_colour(current[d], l, rng);
      const auto proposed_counts = evaluate(proposal);
      ++result.candidates_tested;
      const double proposed_energy = weighted_energy(prob, proposed_counts);
      const bool downhill =
          scaled ? scaled_of(proposed_counts) <= scaled_of(counts) : proposed_energy <= energy;
      if (downhill || metropolis_accept(proposed_energy - energy, schedule.temperature, rng)) {
        current = std::move(proposal);
        counts = proposed_counts;
        energy = proposed_energy;
      }
    }
    schedule.update(energy, cfg);
  }
  if (energy == 0.0) result.found.emplace(n, l, current);
  return result;
}

}  // namespace

CyclicSearchResult cyclic_search(const Problem& prob, std::size_t n_vertices, CyclicMode mode,
                                 const CyclicSearchOptions& options) {
  if (n_vertices < 2) throw PreconditionError("cyclic search needs N >= 2");
  CyclicSearchResult result =
      mode == CyclicMode::Exhaustive ? exhaustive_cyclic(prob, n_vertices, options)
                                     : annealed_cyclic(prob, n_vertices, options);
  if (result.found) {
    const Colouring expanded = expand_cyclic(*result.found);
    if (const auto violation = find_violation(expanded, prob)) {
      throw VerificationError("cyclic search produced a colouring with monochromatic clique " +
                              violation->describe());
    }
  }
  return result;
}

}  // namespace ramsey
