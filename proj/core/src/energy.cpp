#include "ramsey/energy.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

void check_colour(const Colouring& c, ColourId colour) {
  if (colour >= c.n_colours()) {
    throw PreconditionError("colour id " + std::to_string(colour) + " out of range for " +
                            std::to_string(c.n_colours()) + " colours");
  }
}

/// Extends `chosen` by `need` vertices taken in increasing order from
/// `candidates`, every one joined in `colour` to all chosen vertices. Each
/// candidate list only holds vertices compatible with the current prefix, so
/// a mismatching edge ends that branch immediately.
template <typename Visit>
void extend_clique(const Colouring& c, ColourId colour, std::vector<Vertex>& chosen,
                   std::span<const Vertex> candidates, int need, Visit&& visit) {
  if (need == 0) {
    visit(std::span<const Vertex>(chosen));
    return;
  }
  std::vector<Vertex> next;
  next.reserve(candidates.size());
  for (std::size_t i = 0; i + static_cast<std::size_t>(need) <= candidates.size(); ++i) {
    const Vertex r = candidates[i];
    next.clear();
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (c.at(r, candidates[j]) == colour) next.push_back(candidates[j]);
    }
    if (next.size() + 1 < static_cast<std::size_t>(need)) continue;
    chosen.push_back(r);
    extend_clique(c, colour, chosen, next, need - 1, visit);
    chosen.pop_back();
  }
}

/// Visits every monochromatic clique of `size` vertices in `colour`, vertices ascending.
template <typename Visit>
void for_each_clique(const Colouring& c, ColourId colour, int size, Visit&& visit) {
  const auto n = static_cast<Vertex>(c.n_vertices());
  if (static_cast<std::size_t>(size) > c.n_vertices()) return;
  std::vector<Vertex> chosen;
  std::vector<Vertex> candidates;
  for (Vertex p1 = 0; p1 < n; ++p1) {
    for (Vertex p2 = p1 + 1; p2 < n; ++p2) {
      if (c.at(p1, p2) != colour) continue;
      candidates.clear();
      for (Vertex r = p2 + 1; r < n; ++r) {
        if (c.at(p1, r) == colour && c.at(p2, r) == colour) candidates.push_back(r);
      }
      chosen.assign({p1, p2});
      extend_clique(c, colour, chosen, candidates, size - 2, visit);
    }
  }
}

/// Visits the monochromatic cliques of `size` in `colour` that contain both p and q,
/// treating edge (p, q) itself as coloured `colour`. Visited spans exclude p and q.
template <typename Visit>
void for_each_clique_through(const Colouring& c, Vertex p, Vertex q, ColourId colour, int size,
                             Visit&& visit) {
  if (static_cast<std::size_t>(size) > c.n_vertices()) return;
  const auto n = static_cast<Vertex>(c.n_vertices());
  std::vector<Vertex> candidates;
  for (Vertex r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    if (c.at(p, r) == colour && c.at(q, r) == colour) candidates.push_back(r);
  }
  std::vector<Vertex> chosen;
  extend_clique(c, colour, chosen, candidates, size - 2, visit);
}

std::uint64_t count_cliques(const std::uint64_t* adj, std::uint64_t cand, int k) {
  if (k == 0) return 1;
  if (k == 1) return static_cast<std::uint64_t>(std::popcount(cand));
  std::uint64_t total = 0;
  while (cand) {
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    const std::uint64_t next = cand & adj[v];
    if (k == 2) {
      total += static_cast<std::uint64_t>(std::popcount(next));
    } else if (std::popcount(next) >= k - 1) {
      total += count_cliques(adj, next, k - 1);
    }
  }
  return total;
}

template <typename Visit>
void enumerate_cliques(const std::uint64_t* adj, std::uint64_t cand, int k, std::vector<Vertex>& chosen,
                       Visit&& visit) {
  if (k == 0) {
    visit(std::span<const Vertex>(chosen));
    return;
  }
  while (cand) {
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    const std::uint64_t next = cand & adj[v];
    if (std::popcount(next) < k - 1) continue;
    chosen.push_back(static_cast<Vertex>(v));
    enumerate_cliques(adj, next, k - 1, chosen, visit);
    chosen.pop_back();
  }
}

}  // namespace

int clique_energy(const Colouring& c, std::span<const Vertex> vertices, ColourId colour) {
  check_colour(c, colour);
  if (vertices.size() < 2) throw PreconditionError("a clique needs at least 2 vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= c.n_vertices()) {
      throw PreconditionError("vertex " + std::to_string(vertices[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (vertices[i] == vertices[j]) throw PreconditionError("repeated vertex in clique");
    }
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (c.at(vertices[i], vertices[j]) != colour) return 0;
    }
  }
  return 1;
}

double weighted_energy(const Problem& prob, std::span<const std::uint64_t> counts) {
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) total += prob.weight(i) * static_cast<double>(counts[i]);
  return total;
}

EnergyReport total_energy(const Colouring& c, const Problem& prob) {
  prob.check_compatible(c);
  EnergyReport report;
  report.mono_counts.assign(prob.n_colours(), 0);
  std::vector<bool> hot(c.n_edges(), false);
  const std::size_t n = c.n_vertices();
  for (std::size_t i = 0; i < prob.n_colours(); ++i) {
    auto& count = report.mono_counts[i];
    for_each_clique(c, static_cast<ColourId>(i), prob.clique_size(i), [&](std::span<const Vertex> clique) {
      ++count;
      for (std::size_t a = 0; a < clique.size(); ++a) {
        for (std::size_t b = a + 1; b < clique.size(); ++b) hot[edge_index(n, clique[a], clique[b])] = true;
      }
    });
  }
  report.total = weighted_energy(prob, report.mono_counts);
  for (std::size_t i = 0; i < hot.size(); ++i) {
    if (hot[i]) report.hot_edges.push_back(c.edge_at(i));
  }
  return report;
}

FlipCounts flip_counts(const Colouring& c, const Problem& prob, const Edge& e, ColourId new_colour) {
  prob.check_compatible(c);
  c.check_edge(e);
  check_colour(c, new_colour);
  const ColourId old_colour = c.at(e);
  FlipCounts out;
  if (old_colour == new_colour) return out;
  for_each_clique_through(c, e.p, e.q, old_colour, prob.clique_size(old_colour),
                          [&](std::span<const Vertex>) { ++out.destroyed; });
  for_each_clique_through(c, e.p, e.q, new_colour, prob.clique_size(new_colour),
                          [&](std::span<const Vertex>) { ++out.created; });
  return out;
}

double delta_energy(const Colouring& c, const Problem& prob, const Edge& e, ColourId new_colour) {
  const FlipCounts counts = flip_counts(c, prob, e, new_colour);
  if (counts.destroyed == 0 && counts.created == 0) return 0.0;
  const ColourId old_colour = c.at(e);
  return prob.weight(new_colour) * static_cast<double>(counts.created) -
         prob.weight(old_colour) * static_cast<double>(counts.destroyed);
}

Colouring apply_flip(const Colouring& c, const Edge& e, ColourId new_colour) {
  Colouring out = c;
  out.set(e, new_colour);
  return out;
}

std::vector<Edge> hot_edges(const Colouring& c, const Problem& prob) {
  return total_energy(c, prob).hot_edges;
}

EnergyTracker::EnergyTracker(Colouring colouring, Problem problem)
    : colouring_(std::move(colouring)),
      problem_(std::move(problem)),
      n_(colouring_.n_vertices()),
      use_masks_(n_ <= 64) {
  problem_.check_compatible(colouring_);
  rebuild();
}

void EnergyTracker::rebuild() {
  const std::size_t l = problem_.n_colours();
  counts_.assign(l, 0);
  hot_count_.assign(colouring_.n_edges(), 0);
  hot_pos_.assign(colouring_.n_edges(), -1);
  hot_list_.clear();
  endpoints_.clear();
  for (Vertex p = 0; p < n_; ++p) {
    for (Vertex q = p + 1; q < n_; ++q) endpoints_.push_back(Edge{p, q});
  }
  if (use_masks_) {
    adj_.assign(l * n_, 0);
    for (Vertex p = 0; p < n_; ++p) {
      for (Vertex q = p + 1; q < n_; ++q) {
        const ColourId c = colouring_.at(p, q);
        adj(c, p) |= std::uint64_t{1} << q;
        adj(c, q) |= std::uint64_t{1} << p;
      }
    }
  }
  for (std::size_t i = 0; i < l; ++i) {
    for_each_clique(colouring_, static_cast<ColourId>(i), problem_.clique_size(i),
                    [&](std::span<const Vertex> clique) {
                      ++counts_[i];
                      for (std::size_t a = 0; a < clique.size(); ++a) {
                        for (std::size_t b = a + 1; b < clique.size(); ++b) {
                          bump_hot(edge_index(n_, clique[a], clique[b]), +1);
                        }
                      }
                    });
  }
  energy_ = weighted_energy(problem_, counts_);
}

std::optional<std::int64_t> EnergyTracker::scaled_energy() const {
  const auto& scaled = problem_.scaled_weights();
  if (!scaled) return std::nullopt;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) total += (*scaled)[i] * static_cast<std::int64_t>(counts_[i]);
  return total;
}

std::uint64_t EnergyTracker::count_through(Vertex p, Vertex q, ColourId c) const {
  const int size = problem_.clique_size(c);
  if (static_cast<std::size_t>(size) > n_) return 0;
  if (use_masks_) {
    const std::uint64_t cand = adj(c, p) & adj(c, q);
    return count_cliques(&adj_[c * n_], cand, size - 2);
  }
  std::uint64_t total = 0;
  for_each_clique_through(colouring_, p, q, c, size, [&](std::span<const Vertex>) { ++total; });
  return total;
}

void EnergyTracker::update_through(Vertex p, Vertex q, ColourId c, int sign) {
  const int size = problem_.clique_size(c);
  if (static_cast<std::size_t>(size) > n_) return;
  auto visit = [&](std::span<const Vertex> rest) {
    bump_hot(edge_index(n_, p, q), sign);
    for (std::size_t a = 0; a < rest.size(); ++a) {
      bump_hot(p < rest[a] ? edge_index(n_, p, rest[a]) : edge_index(n_, rest[a], p), sign);
      bump_hot(q < rest[a] ? edge_index(n_, q, rest[a]) : edge_index(n_, rest[a], q), sign);
      for (std::size_t b = a + 1; b < rest.size(); ++b) {
        const Vertex u = std::min(rest[a], rest[b]);
        const Vertex v = std::max(rest[a], rest[b]);
        bump_hot(edge_index(n_, u, v), sign);
      }
    }
  };
  if (use_masks_) {
    std::vector<Vertex> chosen;
    enumerate_cliques(&adj_[c * n_], adj(c, p) & adj(c, q), size - 2, chosen, visit);
  } else {
    for_each_clique_through(colouring_, p, q, c, size, visit);
  }
}

void EnergyTracker::bump_hot(std::size_t edge_index, int sign) {
  auto& count = hot_count_[edge_index];
  if (sign > 0) {
    if (count++ == 0) {
      hot_pos_[edge_index] = static_cast<std::int32_t>(hot_list_.size());
      hot_list_.push_back(static_cast<std::uint32_t>(edge_index));
    }
    return;
  }
  if (--count == 0) {
    const auto pos = static_cast<std::size_t>(hot_pos_[edge_index]);
    const std::uint32_t last = hot_list_.back();
    hot_list_[pos] = last;
    hot_pos_[last] = static_cast<std::int32_t>(pos);
    hot_list_.pop_back();
    hot_pos_[edge_index] = -1;
  }
}

FlipCounts EnergyTracker::evaluate(std::size_t edge_index, ColourId new_colour) const {
  const ColourId old_colour = colouring_.at_index(edge_index);
  FlipCounts out;
  if (old_colour == new_colour) return out;
  const Edge e = endpoints_[edge_index];
  out.destroyed = count_through(e.p, e.q, old_colour);
  out.created = count_through(e.p, e.q, new_colour);
  return out;
}

double EnergyTracker::delta(std::size_t edge_index, ColourId new_colour) const {
  const FlipCounts counts = evaluate(edge_index, new_colour);
  if (counts.destroyed == 0 && counts.created == 0) return 0.0;
  return problem_.weight(new_colour) * static_cast<double>(counts.created) -
         problem_.weight(colouring_.at_index(edge_index)) * static_cast<double>(counts.destroyed);
}

FlipCounts EnergyTracker::apply(std::size_t edge_index, ColourId new_colour) {
  if (edge_index >= colouring_.n_edges()) throw PreconditionError("edge index out of range");
  check_colour(colouring_, new_colour);
  const ColourId old_colour = colouring_.at_index(edge_index);
  FlipCounts out;
  if (old_colour == new_colour) return out;
  const Edge e = endpoints_[edge_index];

  out.destroyed = count_through(e.p, e.q, old_colour);
  if (out.destroyed) update_through(e.p, e.q, old_colour, -1);

  colouring_.set_index(edge_index, new_colour);
  if (use_masks_) {
    const std::uint64_t bit_p = std::uint64_t{1} << e.p;
    const std::uint64_t bit_q = std::uint64_t{1} << e.q;
    adj(old_colour, e.p) &= ~bit_q;
    adj(old_colour, e.q) &= ~bit_p;
    adj(new_colour, e.p) |= bit_q;
    adj(new_colour, e.q) |= bit_p;
  }

  out.created = count_through(e.p, e.q, new_colour);
  if (out.created) update_through(e.p, e.q, new_colour, +1);

  counts_[old_colour] -= out.destroyed;
  counts_[new_colour] += out.created;
  energy_ = weighted_energy(problem_, counts_);
  return out;
}

EnergyReport EnergyTracker::report() const {
  EnergyReport out;
  out.total = energy_;
  out.mono_counts = counts_;
  std::vector<std::uint32_t> sorted(hot_list_.begin(), hot_list_.end());
  std::sort(sorted.begin(), sorted.end());
  out.hot_edges.reserve(sorted.size());
  for (const auto i : sorted) out.hot_edges.push_back(colouring_.edge_at(i));
  return out;
}

}  // namespace ramsey
