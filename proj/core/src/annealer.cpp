#include "ramsey/annealer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>
#include <thread>

#include "ramsey/errors.hpp"

namespace ramsey {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  words.push_back(static_cast<std::uint32_t>(master));
  words.push_back(static_cast<std::uint32_t>(master >> 32));
  for (const auto s : stream) {
    words.push_back(static_cast<std::uint32_t>(s));
    words.push_back(static_cast<std::uint32_t>(s >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

void AnnealConfig::validate() const {
  if (!(t_min > 0.0)) throw ConfigError("t_min must be positive");
  if (!(t_min <= initial_temperature && initial_temperature <= t_max)) {
    throw ConfigError("need t_min <= initial_temperature <= t_max");
  }
  if (!(0.0 < cooling_factor && cooling_factor < 1.0)) throw ConfigError("cooling_factor must be in (0,1)");
  if (!(heating_factor > 1.0)) throw ConfigError("heating_factor must be > 1");
  if (stagnation_window == 0) throw ConfigError("stagnation_window must be positive");
  if (full_sweep_period == 0) throw ConfigError("full_sweep_period must be positive");
  if (max_steps == 0) throw ConfigError("max_steps must be positive");
}

std::string format_progress(const ProgressRecord& r) {
  std::ostringstream out;
  out << "step=" << r.step << " N=" << r.n_vertices << " E=" << r.energy << " T=" << r.temperature
      << " best=" << r.best_energy;
  return out.str();
}

AnnealState::AnnealState(Colouring colouring, Problem problem, double temperature, std::uint64_t seed)
    : tracker(std::move(colouring), std::move(problem)),
      best_energy(tracker.energy()),
      schedule{temperature, tracker.energy()},
      rng(seed) {}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0.0) return true;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  return uniform(rng) < std::exp(-delta / temperature);
}

bool metropolis_step(AnnealState& state, std::size_t edge_index, ColourId new_colour) {
  ++state.steps_taken;
  const auto& problem = state.tracker.problem();
  const ColourId old_colour = state.colouring().at_index(edge_index);
  if (old_colour == new_colour) return true;
  const FlipCounts counts = state.tracker.evaluate(edge_index, new_colour);

  bool downhill = false;
  if (const auto& scaled = problem.scaled_weights()) {
    const auto gained = (*scaled)[new_colour] * static_cast<std::int64_t>(counts.created);
    const auto lost = (*scaled)[old_colour] * static_cast<std::int64_t>(counts.destroyed);
    downhill = gained <= lost;
  }
  const double delta = problem.weight(new_colour) * static_cast<double>(counts.created) -
                       problem.weight(old_colour) * static_cast<double>(counts.destroyed);
  if (!downhill && !metropolis_accept(delta, state.schedule.temperature, state.rng)) return false;

  state.tracker.apply(edge_index, new_colour);
  state.best_energy = std::min(state.best_energy, state.tracker.energy());
  return true;
}

ColourId propose_colour(ColourId current, std::size_t n_colours, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, n_colours - 2);
  const auto c = pick(rng);
  return static_cast<ColourId>(c >= current ? c + 1 : c);
}

std::vector<std::uint32_t> sweep_order(AnnealState& state, const AnnealConfig& cfg) {
  std::vector<std::uint32_t> order;
  if (state.energy() == 0.0) return order;
  ++state.sweeps_taken;
  const auto hot = state.tracker.hot_list();
  if (state.sweeps_taken % cfg.full_sweep_period == 0 || hot.empty()) {
    order.resize(state.colouring().n_edges());
    std::iota(order.begin(), order.end(), std::uint32_t{0});
  } else {
    order.assign(hot.begin(), hot.end());
    // hot_list order depends on update history; sort so the shuffle alone decides.
    std::sort(order.begin(), order.end());
  }
  std::shuffle(order.begin(), order.end(), state.rng);
  return order;
}

std::uint64_t biased_sweep(AnnealState& state, const AnnealConfig& cfg) {
  std::uint64_t accepted = 0;
  const std::size_t l = state.colouring().n_colours();
  for (const auto edge : sweep_order(state, cfg)) {
    if (state.energy() == 0.0) break;
    const ColourId next = propose_colour(state.colouring().at_index(edge), l, state.rng);
    accepted += metropolis_step(state, edge, next);
  }
  return accepted;
}

double TemperatureSchedule::update(double energy, const AnnealConfig& cfg) {
  if (energy < last_energy) {
    sweeps_since_improvement = 0;
    temperature = std::max(cfg.t_min, temperature * cfg.cooling_factor);
  } else if (++sweeps_since_improvement >= cfg.stagnation_window) {
    sweeps_since_improvement = 0;
    temperature = std::min(cfg.t_max, temperature * cfg.heating_factor);
  }
  last_energy = energy;
  return temperature;
}

double adapt_temperature(AnnealState& state, const AnnealConfig& cfg) {
  return state.schedule.update(state.energy(), cfg);
}

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::FoundZeroEnergy:
      return "found-zero-energy";
    case SearchStatus::BudgetExhausted:
      return "budget-exhausted";
  }
  return "unknown";
}

Colouring random_colouring(std::size_t n_vertices, std::size_t n_colours, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, n_colours - 1);
  std::vector<ColourId> edges(edge_count(n_vertices));
  for (auto& e : edges) e = static_cast<ColourId>(pick(rng));
  return Colouring(n_vertices, n_colours, std::move(edges));
}

namespace {

AnnealState make_state(const Problem& problem, std::size_t n, const AnnealConfig& cfg,
                       std::optional<Colouring> initial) {
  cfg.validate();
  Rng rng(cfg.rng_seed);
  if (initial) {
    if (initial->n_vertices() != n) {
      throw ConfigError("initial colouring has " + std::to_string(initial->n_vertices()) +
                        " vertices, expected " + std::to_string(n));
    }
    problem.check_compatible(*initial);
    AnnealState state(std::move(*initial), problem, cfg.initial_temperature, 0);
    state.rng = rng;
    return state;
  }
  Colouring start = random_colouring(n, problem.n_colours(), rng);
  AnnealState state(std::move(start), problem, cfg.initial_temperature, 0);
  state.rng = rng;
  return state;
}

}  // namespace

Annealer::Annealer(Problem problem, std::size_t n_vertices, AnnealConfig cfg, std::optional<Colouring> initial,
                   ProgressSink progress)
    : cfg_(cfg), state_(make_state(problem, n_vertices, cfg, std::move(initial))), progress_(std::move(progress)) {}

bool Annealer::done() const noexcept {
  return state_.energy() == 0.0 || state_.steps_taken >= cfg_.max_steps;
}

void Annealer::begin_sweep() {
  order_ = sweep_order(state_, cfg_);
  cursor_ = 0;
  in_sweep_ = true;
}

bool Annealer::step() {
  if (done()) return false;
  if (!in_sweep_ || cursor_ == order_.size()) {
    if (in_sweep_) adapt_temperature(state_, cfg_);
    begin_sweep();
  }
  const auto edge = order_[cursor_++];
  const ColourId next = propose_colour(state_.colouring().at_index(edge), state_.colouring().n_colours(), state_.rng);
  metropolis_step(state_, edge, next);
  if (progress_ && cfg_.progress_interval && state_.steps_taken % cfg_.progress_interval == 0) {
    progress_(ProgressRecord{state_.steps_taken, state_.colouring().n_vertices(), state_.energy(),
                             state_.schedule.temperature, state_.best_energy});
  }
  return true;
}

std::uint64_t Annealer::run(std::uint64_t max_new_steps) {
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t made = 0;
  while (made < max_new_steps && step()) ++made;
  elapsed_ += std::chrono::steady_clock::now() - start;
  return made;
}

void Annealer::run_to_completion() {
  while (!done()) run(cfg_.max_steps);
}

SearchOutcome Annealer::outcome() const {
  SearchOutcome out;
  out.status = found() ? SearchStatus::FoundZeroEnergy : SearchStatus::BudgetExhausted;
  out.colouring = state_.colouring();
  out.best_energy = state_.best_energy;
  out.steps_taken = state_.steps_taken;
  out.wall_seconds = std::chrono::duration<double>(elapsed_).count();
  return out;
}

SearchOutcome anneal(const Problem& prob, std::size_t n_vertices, const AnnealConfig& cfg,
                     std::optional<Colouring> initial, ProgressSink progress) {
  Annealer annealer(prob, n_vertices, cfg, std::move(initial), std::move(progress));
  annealer.run_to_completion();
  return annealer.outcome();
}

Colouring extend_colouring(const Colouring& c, Rng& rng) {
  const std::size_t n = c.n_vertices();
  const std::size_t l = c.n_colours();
  Colouring out(n + 1, l);
  for (Vertex p = 0; p < n; ++p) {
    for (Vertex q = p + 1; q < n; ++q) out.set_index(edge_index(n + 1, p, q), c.at(p, q));
  }
  std::vector<std::size_t> counts(l);
  std::vector<ColourId> tied;
  for (Vertex p = 0; p < n; ++p) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Vertex q = 0; q < n; ++q) {
      if (q != p) ++counts[c.at(p, q)];
    }
    const std::size_t least = *std::min_element(counts.begin(), counts.end());
    tied.clear();
    for (std::size_t colour = 0; colour < l; ++colour) {
      if (counts[colour] == least) tied.push_back(static_cast<ColourId>(colour));
    }
    ColourId chosen = tied.front();
    if (tied.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
      chosen = tied[pick(rng)];
    }
    out.set_index(edge_index(n + 1, p, n), chosen);
  }
  return out;
}

AttemptsResult run_attempts(const Problem& prob, std::size_t n_vertices, const AnnealConfig& cfg,
                            const StartFactory& start, unsigned jobs, std::uint64_t round_steps,
                            ProgressSink progress) {
  cfg.validate();
  if (jobs == 0) jobs = 1;
  if (round_steps == 0) round_steps = 1;
  AttemptsResult result;
  const std::uint64_t total = cfg.restarts + 1;

  for (std::uint64_t first = 0; first < total && !result.success; first += jobs) {
    const std::uint64_t batch = std::min<std::uint64_t>(jobs, total - first);
    std::vector<std::unique_ptr<Annealer>> runs;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t a = first; a < first + batch; ++a) {
      const std::uint64_t seed = derive_seed(cfg.rng_seed, {n_vertices, a});
      Rng start_rng(derive_seed(seed, {0}));
      std::optional<Colouring> initial = start ? start(a, start_rng) : std::nullopt;
      AnnealConfig attempt_cfg = cfg;
      attempt_cfg.rng_seed = seed;
      runs.push_back(std::make_unique<Annealer>(prob, n_vertices, attempt_cfg, std::move(initial), progress));
      seeds.push_back(seed);
    }

    std::optional<std::size_t> winner;
    if (batch == 1) {
      runs.front()->run_to_completion();
      if (runs.front()->found()) winner = 0;
    } else {
      while (true) {
        {
          std::vector<std::jthread> workers;
          for (auto& run : runs) {
            if (!run->done()) workers.emplace_back([&run, round_steps] { run->run(round_steps); });
          }
        }
        for (std::size_t i = 0; i < runs.size() && !winner; ++i) {
          if (runs[i]->found()) winner = i;
        }
        const bool all_done = std::all_of(runs.begin(), runs.end(), [](const auto& r) { return r->done(); });
        if (winner || all_done) break;
      }
    }

    for (std::size_t i = 0; i < runs.size(); ++i) {
      const SearchOutcome o = runs[i]->outcome();
      result.attempts.push_back(AttemptRecord{n_vertices, first + i, seeds[i], o.status, o.best_energy,
                                              o.steps_taken, o.wall_seconds});
    }
    if (winner) result.success = runs[*winner]->outcome();
  }
  return result;
}

std::optional<std::size_t> RamseySearchReport::best_certified_n() const {
  if (certificates.empty()) return std::nullopt;
  return certificates.back().colouring().n_vertices();
}

RamseySearchReport search_ramsey(const Problem& prob, std::size_t start_n, std::size_t max_n,
                                 const AnnealConfig& cfg, const RamseySearchOptions& options) {
  if (start_n < 2) throw ConfigError("start_n must be >= 2");
  if (start_n > max_n) throw ConfigError("start_n must not exceed max_n");
  cfg.validate();

  RamseySearchReport report;
  std::optional<Colouring> previous;
  for (std::size_t n = start_n; n <= max_n; ++n) {
    StartFactory start;
    if (previous) {
      start = [&previous](std::uint64_t, Rng& rng) -> std::optional<Colouring> {
        return extend_colouring(*previous, rng);
      };
    }
    AttemptsResult result = run_attempts(prob, n, cfg, start, options.jobs, options.round_steps, options.progress);
    report.attempts.insert(report.attempts.end(), result.attempts.begin(), result.attempts.end());
    if (!result.success) break;

    Certificate cert = make_certificate(result.success->colouring, prob);
    if (options.on_certificate) options.on_certificate(cert);
    previous = cert.colouring();
    report.certificates.push_back(std::move(cert));
  }
  return report;
}

}  // namespace ramsey
