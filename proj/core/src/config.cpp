#include "ramsey/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError("bad value '" + value + "' for " + key);
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("bad value '" + value + "' for " + key + " (expected a non-negative integer)");
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected 'key = value', got '" + body + "'");
    }
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string());
  return parse_key_values(in);
}

const std::vector<std::string>& anneal_config_keys() {
  static const std::vector<std::string> keys = {
      "initial_temperature", "cooling_factor", "heating_factor", "stagnation_window",
      "full_sweep_period",   "max_steps",      "t_min",          "t_max",
      "seed",                "restarts",       "progress_interval"};
  return keys;
}

void apply_setting(AnnealConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "initial_temperature") {
    cfg.initial_temperature = to_double(key, value);
  } else if (key == "cooling_factor") {
    cfg.cooling_factor = to_double(key, value);
  } else if (key == "heating_factor") {
    cfg.heating_factor = to_double(key, value);
  } else if (key == "stagnation_window") {
    cfg.stagnation_window = to_uint(key, value);
  } else if (key == "full_sweep_period") {
    cfg.full_sweep_period = to_uint(key, value);
  } else if (key == "max_steps") {
    cfg.max_steps = to_uint(key, value);
  } else if (key == "t_min") {
    cfg.t_min = to_double(key, value);
  } else if (key == "t_max") {
    cfg.t_max = to_double(key, value);
  } else if (key == "seed") {
    cfg.rng_seed = to_uint(key, value);
  } else if (key == "restarts") {
    cfg.restarts = to_uint(key, value);
  } else if (key == "progress_interval") {
    cfg.progress_interval = to_uint(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

AnnealConfig apply_settings(AnnealConfig cfg, const KeyValues& settings) {
  for (const auto& [key, value] : settings) apply_setting(cfg, key, value);
  cfg.validate();
  return cfg;
}

KeyValues describe(const AnnealConfig& cfg) {
  return {
      {"initial_temperature", format_double(cfg.initial_temperature)},
      {"cooling_factor", format_double(cfg.cooling_factor)},
      {"heating_factor", format_double(cfg.heating_factor)},
      {"stagnation_window", std::to_string(cfg.stagnation_window)},
      {"full_sweep_period", std::to_string(cfg.full_sweep_period)},
      {"max_steps", std::to_string(cfg.max_steps)},
      {"t_min", format_double(cfg.t_min)},
      {"t_max", format_double(cfg.t_max)},
      {"seed", std::to_string(cfg.rng_seed)},
      {"restarts", std::to_string(cfg.restarts)},
      {"progress_interval", std::to_string(cfg.progress_interval)},
  };
}

}  // namespace ramsey
