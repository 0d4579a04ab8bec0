#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ramsey/colouring.hpp"
#include "ramsey/energy.hpp"
#include "ramsey/verifier.hpp"

namespace ramsey {

using Rng = std::mt19937_64;

/// Deterministic 64-bit seed for a sub-stream (e.g. {N, attempt}) of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> stream);

/// Simulated-annealing parameters. Stagnation is measured in sweeps.
struct AnnealConfig {
  double initial_temperature = 1.0;
  double cooling_factor = 0.95;
  double heating_factor = 1.25;
  std::uint64_t stagnation_window = 5;
  std::uint64_t full_sweep_period = 50;
  std::uint64_t max_steps = 10'000'000;
  double t_min = 1e-3;
  double t_max = 10.0;
  std::uint64_t rng_seed = 0;
  /// Extra attempts per vertex count in search_ramsey after the first fails.
  std::uint64_t restarts = 5;
  /// Steps between progress records; 0 disables them.
  std::uint64_t progress_interval = 0;

  /// Throws ConfigError unless t_min <= T_0 <= t_max, 0 < cooling < 1 < heating,
  /// and the window, period, and budget are positive.
  void validate() const;
};

struct ProgressRecord {
  std::uint64_t step = 0;
  std::size_t n_vertices = 0;
  double energy = 0.0;
  double temperature = 0.0;
  double best_energy = 0.0;
};

/// "step=<k> N=<n> E=<e> T=<t> best=<b>"
std::string format_progress(const ProgressRecord& record);

using ProgressSink = std::function<void(const ProgressRecord&)>;

/// Reheat-on-stagnation temperature control, updated once per sweep: the
/// temperature drops whenever the energy fell since the previous update and
/// rises after `stagnation_window` consecutive updates without a fall.
struct TemperatureSchedule {
  double temperature = 1.0;
  /// Energy at the previous update.
  double last_energy = 0.0;
  std::uint64_t sweeps_since_improvement = 0;

  /// Returns the new temperature, clamped to [t_min, t_max].
  double update(double energy, const AnnealConfig& cfg);
};

/// Markov-chain state of one annealing run.
struct AnnealState {
  AnnealState(Colouring colouring, Problem problem, double temperature, std::uint64_t seed);

  const Colouring& colouring() const noexcept { return tracker.colouring(); }
  double energy() const noexcept { return tracker.energy(); }

  double temperature() const noexcept { return schedule.temperature; }

  EnergyTracker tracker;
  double best_energy;
  TemperatureSchedule schedule;
  std::uint64_t steps_taken = 0;
  std::uint64_t sweeps_taken = 0;
  Rng rng;
};

/// Metropolis rule: true for delta <= 0, otherwise true with probability exp(-delta / T)
/// using one uniform draw.
bool metropolis_accept(double delta, double temperature, Rng& rng);

/// Proposes recolouring `edge_index` to `new_colour` and applies it if accepted.
/// Downhill moves are decided on exact integer-scaled energies when the weights allow.
bool metropolis_step(AnnealState& state, std::size_t edge_index, ColourId new_colour);

/// Uniformly random colour different from `current`.
ColourId propose_colour(ColourId current, std::size_t n_colours, Rng& rng);

/// Edges visited by the next sweep, in randomized order: all edges on every
/// `full_sweep_period`-th sweep or when no edge is hot but the energy is
/// positive, otherwise the hot edges; empty at zero energy.
std::vector<std::uint32_t> sweep_order(AnnealState& state, const AnnealConfig& cfg);

/// One complete sweep (see sweep_order) followed by no temperature change.
/// Returns the number of accepted flips.
std::uint64_t biased_sweep(AnnealState& state, const AnnealConfig& cfg);

/// Sweep-end temperature update of the state's schedule at its current energy.
double adapt_temperature(AnnealState& state, const AnnealConfig& cfg);

enum class SearchStatus { FoundZeroEnergy, BudgetExhausted };

const char* to_string(SearchStatus status);

struct SearchOutcome {
  SearchStatus status = SearchStatus::BudgetExhausted;
  Colouring colouring{2, 2};
  double best_energy = 0.0;
  std::uint64_t steps_taken = 0;
  double wall_seconds = 0.0;
};

/// Resumable annealing run. Each call to step() makes one proposal; sweeps and
/// temperature updates happen at sweep boundaries, so splitting a run into
/// chunks does not change its trajectory.
class Annealer {
 public:
  Annealer(Problem problem, std::size_t n_vertices, AnnealConfig cfg,
           std::optional<Colouring> initial = std::nullopt, ProgressSink progress = {});

  /// One proposal. False once the energy is zero or the step budget is spent.
  bool step();
  /// Up to `max_new_steps` proposals; returns the number made.
  std::uint64_t run(std::uint64_t max_new_steps);
  void run_to_completion();

  bool done() const noexcept;
  bool found() const noexcept { return state_.energy() == 0.0; }
  const AnnealState& state() const noexcept { return state_; }
  const AnnealConfig& config() const noexcept { return cfg_; }
  SearchOutcome outcome() const;

 private:
  void begin_sweep();

  AnnealConfig cfg_;
  AnnealState state_;
  ProgressSink progress_;
  std::vector<std::uint32_t> order_;
  std::size_t cursor_ = 0;
  bool in_sweep_ = false;
  std::chrono::steady_clock::duration elapsed_{};
};

/// I.i.d. uniform edge colours.
Colouring random_colouring(std::size_t n_vertices, std::size_t n_colours, Rng& rng);

/// Full annealing run from `initial` or a random colouring. Deterministic in
/// (prob, N, cfg, initial).
SearchOutcome anneal(const Problem& prob, std::size_t n_vertices, const AnnealConfig& cfg,
                     std::optional<Colouring> initial = std::nullopt, ProgressSink progress = {});

/// Adds vertex N. Every old vertex p keeps its edges; edge (p, N) takes the
/// colour least frequent among p's existing edges, ties broken uniformly.
Colouring extend_colouring(const Colouring& c, Rng& rng);

struct AttemptRecord {
  std::size_t n_vertices = 0;
  std::uint64_t attempt = 0;
  std::uint64_t seed = 0;
  SearchStatus status = SearchStatus::BudgetExhausted;
  double best_energy = 0.0;
  std::uint64_t steps_taken = 0;
  double wall_seconds = 0.0;
};

/// Outcome of annealing one vertex count with up to 1 + restarts attempts.
struct AttemptsResult {
  std::optional<SearchOutcome> success;
  std::vector<AttemptRecord> attempts;
};

/// Produces the starting colouring for an attempt (nullopt = random start).
using StartFactory = std::function<std::optional<Colouring>(std::uint64_t attempt, Rng& rng)>;

/// Runs attempts 0..restarts at N, `jobs` at a time. Concurrent attempts
/// advance in rounds of `round_steps`; after each round the lowest-index
/// success wins, so the result depends only on the seeds and `jobs`.
AttemptsResult run_attempts(const Problem& prob, std::size_t n_vertices, const AnnealConfig& cfg,
                            const StartFactory& start, unsigned jobs = 1, std::uint64_t round_steps = 100'000,
                            ProgressSink progress = {});

struct RamseySearchReport {
  std::vector<Certificate> certificates;
  std::vector<AttemptRecord> attempts;
  /// Largest N with a verified clique-free colouring (bound N + 1).
  std::optional<std::size_t> best_certified_n() const;
};

struct RamseySearchOptions {
  unsigned jobs = 1;
  std::uint64_t round_steps = 100'000;
  ProgressSink progress;
  /// Called right after each certificate is issued.
  std::function<void(const Certificate&)> on_certificate;
};

/// Vertex-extension search: anneal at start_n from random, certify, extend the
/// certified colouring by one vertex, continue until max_n or until every
/// attempt at some N runs out of budget.
RamseySearchReport search_ramsey(const Problem& prob, std::size_t start_n, std::size_t max_n,
                                 const AnnealConfig& cfg, const RamseySearchOptions& options = {});

}  // namespace ramsey
