#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/annealer.hpp"

namespace ramsey {

/// Ordered `key = value` pairs from a flat configuration file. Blank lines and
/// lines starting with '#' are ignored.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::filesystem::path& path);

/// Keys understood by apply_setting().
const std::vector<std::string>& anneal_config_keys();

/// Sets one annealing parameter by name. Throws ConfigError for an unknown key
/// or an unparsable value.
void apply_setting(AnnealConfig& cfg, const std::string& key, const std::string& value);

/// Applies every pair in order; validates the result.
AnnealConfig apply_settings(AnnealConfig cfg, const KeyValues& settings);

/// All parameters as `key = value` pairs, in anneal_config_keys() order.
KeyValues describe(const AnnealConfig& cfg);

}  // namespace ramsey
