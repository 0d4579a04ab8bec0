#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>

#include "ramsey/analysis.hpp"
#include "ramsey/annealer.hpp"
#include "ramsey/colouring_io.hpp"
#include "ramsey/config.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/verifier.hpp"

namespace ramsey::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultProgressInterval = 1'000'000;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string flag_name(const std::string& key) {
  std::string out = "--";
  for (const char ch : key) out += ch == '_' ? '-' : ch;
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_double(values[i]);
  return out;
}

/// Annealing parameters from defaults, then --config file, then individual flags.
struct AnnealOptions {
  std::string config_file;
  std::map<std::string, std::string> flags;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "Flat key = value configuration file")->check(CLI::ExistingFile);
    for (const auto& key : anneal_config_keys()) {
      app.add_option(flag_name(key), flags[key], "Annealing parameter '" + key + "'");
    }
  }

  /// Resolved config; draws a seed from system entropy when none was given.
  AnnealConfig resolve(const CLI::App& app, std::uint64_t default_progress = 0) const {
    AnnealConfig cfg;
    cfg.progress_interval = default_progress;
    bool seeded = false;
    if (!config_file.empty()) {
      for (const auto& [key, value] : load_key_values(config_file)) {
        apply_setting(cfg, key, value);
        seeded |= key == "seed";
      }
    }
    for (const auto& key : anneal_config_keys()) {
      if (app.count(flag_name(key)) > 0) {
        apply_setting(cfg, key, flags.at(key));
        seeded |= key == "seed";
      }
    }
    if (!seeded) cfg.rng_seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) | std::random_device{}();
    cfg.validate();
    return cfg;
  }
};

struct ProblemOptions {
  std::string targets;
  std::string weights;

  void attach(CLI::App& app, bool required) {
    auto* opt = app.add_option("--targets", targets, "Clique sizes per colour, e.g. 4,4 or 3,3,4");
    if (required) opt->required();
    app.add_option("--weights", weights, "Clique weights K_i, e.g. 0.25,0.25 (default 1/x_i)");
  }

  Problem resolve() const {
    auto sizes = parse_targets(targets);
    if (weights.empty()) return Problem(std::move(sizes));
    return Problem(std::move(sizes), parse_weights(weights));
  }
};

json config_json(const AnnealConfig& cfg) {
  json out = json::object();
  for (const auto& [key, value] : describe(cfg)) out[key] = value;
  return out;
}

void append_config_args(std::vector<std::string>& argv, const AnnealConfig& cfg) {
  for (const auto& [key, value] : describe(cfg)) {
    argv.push_back(flag_name(key));
    argv.push_back(value);
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

std::string certificate_text(const Certificate& cert) {
  std::ostringstream out;
  cert.write(out);
  return out.str();
}

void write_manifest(const fs::path& path, json manifest) {
  write_text(path, manifest.dump(2) + "\n");
}

json problem_json(const Problem& prob) {
  return json{{"label", prob.label()}, {"clique_sizes", prob.clique_sizes()}, {"weights", prob.weights()}};
}

json attempt_json(const AttemptRecord& a) {
  return json{{"n", a.n_vertices},           {"attempt", a.attempt},
              {"seed", a.seed},              {"status", to_string(a.status)},
              {"best_energy", a.best_energy}, {"steps", a.steps_taken},
              {"wall_seconds", a.wall_seconds}};
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    const auto lo = std::stoul(a, &used_a);
    const auto hi = std::stoul(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    if (lo < 2 || lo > hi) throw ConfigError("--n-range needs 2 <= a <= b, got '" + text + "'");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw ConfigError("--n-range expects a:b, got '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ConfigError("--n-range expects a:b, got '" + text + "'");
  }
}

ProgressSink progress_sink(std::ostream& err) {
  auto mutex = std::make_shared<std::mutex>();
  return [&err, mutex](const ProgressRecord& record) {
    std::lock_guard lock(*mutex);
    err << format_progress(record) << '\n';
  };
}

// ---------------------------------------------------------------------------

struct SearchCommand {
  ProblemOptions problem;
  AnnealOptions anneal;
  std::size_t n = 0;
  std::string n_range;
  unsigned jobs = 1;
  std::uint64_t round_steps = 100'000;
  std::string out_dir = "ramsey-out";
  std::string initial;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("search", "Anneal for clique-free colourings and certify lower bounds");
    problem.attach(*cmd, true);
    auto* n_opt = cmd->add_option("--n", n, "Single vertex count (one annealing run with restarts)");
    auto* range_opt = cmd->add_option("--n-range", n_range, "Vertex range a:b for the extension search");
    n_opt->excludes(range_opt);
    range_opt->excludes(n_opt);
    cmd->add_option("--jobs", jobs, "Parallel attempts per vertex count")->check(CLI::PositiveNumber);
    cmd->add_option("--round-steps", round_steps, "Steps per polling round when --jobs > 1")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out-dir", out_dir, "Directory for colourings, certificates, and manifest");
    cmd->add_option("--initial", initial, "Starting colouring for --n (canonical format)")
        ->check(CLI::ExistingFile);
    anneal.attach(*cmd);
    return cmd;
  }

  int run(const CLI::App& cmd, std::ostream& out, std::ostream& err) const {
    if (cmd.count("--n") == 0 && cmd.count("--n-range") == 0) throw ConfigError("search needs --n or --n-range");
    const Problem prob = problem.resolve();
    const AnnealConfig cfg = anneal.resolve(cmd, kDefaultProgressInterval);
    const std::string started = utc_timestamp();
    const fs::path dir(out_dir);
    fs::create_directories(dir);

    std::vector<std::string> argv = {"search", "--targets", join(prob.clique_sizes()), "--weights",
                                     join(prob.weights())};
    if (cmd.count("--n")) {
      argv.insert(argv.end(), {"--n", std::to_string(n)});
    } else {
      argv.insert(argv.end(), {"--n-range", n_range});
    }
    argv.insert(argv.end(), {"--jobs", std::to_string(jobs), "--round-steps", std::to_string(round_steps),
                             "--out-dir", out_dir});
    if (!initial.empty()) argv.insert(argv.end(), {"--initial", fs::absolute(initial).string()});
    append_config_args(argv, cfg);

    json outputs = json::array();
    std::vector<AttemptRecord> attempts;
    std::vector<std::string> statements;
    auto emit = [&](const Certificate& cert) {
      const std::size_t size = cert.colouring().n_vertices();
      const fs::path colouring_path = dir / ("colouring_N" + std::to_string(size) + ".txt");
      const fs::path certificate_path = dir / ("certificate_N" + std::to_string(size) + ".txt");
      write_text(colouring_path, to_canonical_string(cert.colouring()));
      write_text(certificate_path, certificate_text(cert));
      outputs.push_back(colouring_path.string());
      outputs.push_back(certificate_path.string());
      statements.push_back(cert.statement());
      out << "CERTIFIED: " << cert.statement() << " (N=" << size << ") -> " << certificate_path.string() << '\n';
    };

    const ProgressSink progress = cfg.progress_interval ? progress_sink(err) : ProgressSink{};
    std::optional<std::size_t> exhausted_at;
    if (cmd.count("--n")) {
      if (n < 2) throw ConfigError("--n must be >= 2");
      std::optional<Colouring> start;
      if (!initial.empty()) start = load_colouring(initial);
      StartFactory factory;
      if (start) factory = [&start](std::uint64_t, Rng&) { return start; };
      AttemptsResult result = run_attempts(prob, n, cfg, factory, jobs, round_steps, progress);
      attempts = result.attempts;
      if (result.success) {
        emit(make_certificate(result.success->colouring, prob));
      } else {
        exhausted_at = n;
      }
    } else {
      const auto [lo, hi] = parse_range(n_range);
      RamseySearchOptions options;
      options.jobs = jobs;
      options.round_steps = round_steps;
      options.progress = progress;
      options.on_certificate = emit;
      RamseySearchReport report = search_ramsey(prob, lo, hi, cfg, options);
      attempts = report.attempts;
      const std::size_t reached = report.best_certified_n().value_or(lo - 1);
      if (reached < hi) exhausted_at = reached + 1;
    }

    double best_failed = 0.0;
    if (exhausted_at) {
      bool any = false;
      for (const auto& a : attempts) {
        if (a.n_vertices != *exhausted_at) continue;
        best_failed = any ? std::min(best_failed, a.best_energy) : a.best_energy;
        any = true;
      }
      out << "EXHAUSTED: no clique-free colouring for " << prob.label() << " at N=" << *exhausted_at
          << "; best_energy=" << best_failed << '\n';
    }

    json attempts_json = json::array();
    for (const auto& a : attempts) attempts_json.push_back(attempt_json(a));
    json outcome = {{"certified", statements}, {"attempts", attempts_json}};
    if (exhausted_at) outcome["exhausted_at"] = *exhausted_at;
    if (exhausted_at) outcome["best_energy_at_exhaustion"] = best_failed;
    const fs::path manifest_path = dir / "manifest.json";
    json inputs = json::array();
    if (!initial.empty()) inputs.push_back(initial);
    write_manifest(manifest_path, {{"tool", "ramsey"},
                                   {"version", kVersion},
                                   {"subcommand", "search"},
                                   {"problem", problem_json(prob)},
                                   {"config", config_json(cfg)},
                                   {"seed", cfg.rng_seed},
                                   {"jobs", jobs},
                                   {"argv", argv},
                                   {"inputs", inputs},
                                   {"outputs", outputs},
                                   {"started_at", started},
                                   {"finished_at", utc_timestamp()},
                                   {"outcome", outcome}});
    out << "manifest: " << manifest_path.string() << '\n';
    return statements.empty() ? kSearchExhausted : kSuccess;
  }
};

struct VerifyCommand {
  ProblemOptions problem;
  std::string path;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("verify", "Check a colouring or certificate for monochromatic target cliques");
    cmd->add_option("path", path, "Colouring or certificate file")->required();
    problem.attach(*cmd, false);
    return cmd;
  }

  int run(const CLI::App& cmd, std::ostream& out, std::ostream&) const {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string first;
    std::getline(in, first);
    in.seekg(0);

    if (first == kCertificateHeader) {
      try {
        const Certificate cert = read_certificate(in);
        out << "CLIQUE-FREE: " << cert.statement() << '\n' << "checksum: " << cert.checksum() << " (ok)\n";
        return kSuccess;
      } catch (const VerificationError& e) {
        out << "VIOLATION: " << e.what() << '\n';
        return kVerificationFailed;
      }
    }

    if (cmd.count("--targets") == 0) throw ConfigError("verifying a bare colouring needs --targets");
    const Colouring colouring = read_colouring(in);
    const Problem prob = problem.resolve();
    prob.check_compatible(colouring);
    if (const auto violation = find_violation(colouring, prob)) {
      out << "VIOLATION: " << prob.label() << " monochromatic clique " << violation->describe() << '\n';
      return kVerificationFailed;
    }
    out << "CLIQUE-FREE: " << prob.label() << " >= " << colouring.n_vertices() + 1 << '\n';
    return kSuccess;
  }
};

struct ExtendCommand {
  std::string path;
  std::uint64_t seed = 0;
  std::string out_path;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("extend", "Add one vertex, colouring new edges with each vertex's least used colour");
    cmd->add_option("path", path, "Colouring file")->required();
    cmd->add_option("--seed", seed, "Tie-break seed (default: system entropy)");
    cmd->add_option("--out", out_path, "Output file (default: standard output)");
    return cmd;
  }

  int run(const CLI::App& cmd, std::ostream& out, std::ostream& err) const {
    const std::string started = utc_timestamp();
    const Colouring colouring = load_colouring(path);
    const std::uint64_t used_seed =
        cmd.count("--seed") ? seed : (static_cast<std::uint64_t>(std::random_device{}()) << 32) | std::random_device{}();
    Rng rng(used_seed);
    const Colouring extended = extend_colouring(colouring, rng);
    const std::string text = to_canonical_string(extended);
    if (out_path.empty()) {
      out << text;
      err << "seed: " << used_seed << '\n';
      return kSuccess;
    }
    write_text(out_path, text);
    const std::vector<std::string> argv = {"extend", fs::absolute(path).string(), "--seed", std::to_string(used_seed),
                                           "--out", out_path};
    write_manifest(out_path + ".manifest.json",
                   {{"tool", "ramsey"},
                    {"version", kVersion},
                    {"subcommand", "extend"},
                    {"seed", used_seed},
                    {"argv", argv},
                    {"inputs", {path}},
                    {"outputs", {out_path}},
                    {"started_at", started},
                    {"finished_at", utc_timestamp()},
                    {"outcome", {{"n_vertices", extended.n_vertices()}}}});
    out << "extended N=" << colouring.n_vertices() << " -> N=" << extended.n_vertices() << ": " << out_path << '\n';
    return kSuccess;
  }
};

struct DosCommand {
  ProblemOptions problem;
  std::string path;
  std::string out_path;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("dos", "Single-flip density of states around a colouring (all K_i = 1)");
    cmd->add_option("path", path, "Colouring file")->required();
    cmd->add_option("--targets", problem.targets, "Clique sizes per colour")->required();
    cmd->add_option("--out", out_path, "Histogram file (default: standard output)");
    return cmd;
  }

  int run(const CLI::App&, std::ostream& out, std::ostream& err) const {
    const std::string started = utc_timestamp();
    const Colouring colouring = load_colouring(path);
    const Problem prob = Problem(parse_targets(problem.targets)).with_unit_weights();
    const DosHistogram dos = single_flip_dos(colouring, prob);
    if (dos.off_manifold) {
      err << "warning: colouring is not clique-free (energy " << dos.base_energy
          << "); histogram is off-manifold\n";
    }
    std::ostringstream text;
    write_dos(text, dos);
    err << "neighbours: " << dos.neighbour_count << " mean_energy: " << dos.mean_energy() << '\n';
    if (out_path.empty()) {
      out << text.str();
      return kSuccess;
    }
    write_text(out_path, text.str());
    const std::vector<std::string> argv = {"dos", fs::absolute(path).string(), "--targets",
                                           join(prob.clique_sizes()), "--out", out_path};
    write_manifest(out_path + ".manifest.json",
                   {{"tool", "ramsey"},
                    {"version", kVersion},
                    {"subcommand", "dos"},
                    {"problem", problem_json(prob)},
                    {"argv", argv},
                    {"inputs", {path}},
                    {"outputs", {out_path}},
                    {"started_at", started},
                    {"finished_at", utc_timestamp()},
                    {"outcome",
                     {{"neighbours", dos.neighbour_count},
                      {"mean_energy", dos.mean_energy()},
                      {"off_manifold", dos.off_manifold}}}});
    out << "wrote " << out_path << '\n';
    return kSuccess;
  }
};

struct CyclicCommand {
  ProblemOptions problem;
  AnnealOptions anneal;
  std::size_t n = 0;
  std::string mode = "exhaustive";
  std::uint64_t budget = kDefaultCyclicBudget;
  std::string out_path;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("cyclic", "Search colourings that depend only on circular vertex distance");
    problem.attach(*cmd, true);
    cmd->add_option("--n", n, "Vertex count")->required()->check(CLI::Range(2, 100000));
    cmd->add_option("--mode", mode, "exhaustive or annealed")->check(CLI::IsMember({"exhaustive", "annealed"}));
    cmd->add_option("--budget", budget, "Largest class-assignment count for exhaustive mode");
    cmd->add_option("--out", out_path, "Expanded colouring file (default: standard output)");
    anneal.attach(*cmd);
    return cmd;
  }

  int run(const CLI::App& cmd, std::ostream& out, std::ostream&) const {
    const std::string started = utc_timestamp();
    const Problem prob = problem.resolve();
    CyclicSearchOptions options;
    options.budget = budget;
    const bool annealed = mode == "annealed";
    if (annealed) options.anneal = anneal.resolve(cmd);
    const CyclicSearchResult result =
        cyclic_search(prob, n, annealed ? CyclicMode::Annealed : CyclicMode::Exhaustive, options);

    json outcome = {{"candidates_tested", result.candidates_tested}, {"found", result.found.has_value()}};
    int code = kSearchExhausted;
    std::optional<Colouring> expanded;
    if (result.found) {
      expanded = expand_cyclic(*result.found);
      std::string classes;
      for (const ColourId c : result.found->class_colours()) classes += (classes.empty() ? "" : " ") + std::to_string(c);
      out << "classes: " << classes << '\n';
      out << "CLIQUE-FREE: " << prob.label() << " >= " << n + 1 << '\n';
      outcome["classes"] = result.found->class_colours();
      code = kSuccess;
    } else {
      out << "NOT FOUND: no clique-free cyclic colouring for " << prob.label() << " at N=" << n << " ("
          << result.candidates_tested << " candidates tested)\n";
    }

    if (out_path.empty()) {
      if (expanded) write_colouring(out, *expanded);
      return code;
    }
    json outputs = json::array();
    if (expanded) {
      write_text(out_path, to_canonical_string(*expanded));
      outputs.push_back(out_path);
    }
    std::vector<std::string> argv = {"cyclic",  "--targets", join(prob.clique_sizes()), "--weights",
                                     join(prob.weights()), "--n", std::to_string(n), "--mode", mode,
                                     "--budget", std::to_string(budget), "--out", out_path};
    json manifest = {{"tool", "ramsey"},
                     {"version", kVersion},
                     {"subcommand", "cyclic"},
                     {"problem", problem_json(prob)},
                     {"inputs", json::array()},
                     {"outputs", outputs},
                     {"started_at", started},
                     {"finished_at", utc_timestamp()},
                     {"outcome", outcome}};
    if (annealed) {
      append_config_args(argv, options.anneal);
      manifest["config"] = config_json(options.anneal);
      manifest["seed"] = options.anneal.rng_seed;
    }
    manifest["argv"] = argv;
    write_manifest(out_path + ".manifest.json", manifest);
    return code;
  }
};

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth);

struct ReplayCommand {
  std::string manifest_path;
  std::string output;

  CLI::App* attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    cmd->add_option("manifest", manifest_path, "manifest.json written by a previous run")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--output", output, "Replace the recorded --out / --out-dir destination");
    return cmd;
  }

  int run(const CLI::App&, std::ostream& out, std::ostream& err, int depth) const {
    json manifest;
    try {
      std::ifstream in(manifest_path);
      manifest = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError("bad manifest " + manifest_path + ": " + e.what());
    }
    if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
      throw ParseError("manifest " + manifest_path + " has no argv");
    }
    auto argv = manifest["argv"].get<std::vector<std::string>>();
    if (!output.empty()) {
      for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
        if (argv[i] == "--out" || argv[i] == "--out-dir") argv[i + 1] = output;
      }
    }
    return dispatch(argv, out, err, depth + 1);
  }
};

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth) {
  CLI::App app{"Lower bounds for multicolour Ramsey numbers via clique-energy annealing", "ramsey"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SearchCommand search;
  VerifyCommand verify;
  ExtendCommand extend;
  DosCommand dos;
  CyclicCommand cyclic;
  ReplayCommand replay;
  auto* search_cmd = search.attach(app);
  auto* verify_cmd = verify.attach(app);
  auto* extend_cmd = extend.attach(app);
  auto* dos_cmd = dos.attach(app);
  auto* cyclic_cmd = cyclic.attach(app);
  auto* replay_cmd = depth == 0 ? replay.attach(app) : nullptr;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*search_cmd) return search.run(*search_cmd, out, err);
    if (*verify_cmd) return verify.run(*verify_cmd, out, err);
    if (*extend_cmd) return extend.run(*extend_cmd, out, err);
    if (*dos_cmd) return dos.run(*dos_cmd, out, err);
    if (*cyclic_cmd) return cyclic.run(*cyclic_cmd, out, err);
    if (replay_cmd && *replay_cmd) return replay.run(*replay_cmd, out, err, depth);
  } catch (const ramsey::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return 74;
  }
  err << app.help();
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return dispatch(args, out, err, 0);
}

}  // namespace ramsey::cli
