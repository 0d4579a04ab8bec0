#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ramsey/colouring.hpp"

namespace ramsey {

inline constexpr std::string_view kColouringHeader = "ramsey-colouring v1";

/// Writes the canonical line-oriented format:
///
///     ramsey-colouring v1
///     n=<N> colours=<l>
///     <row 0: colours of (0,1) .. (0,N-1)>
///     ...
///     <row N-2: colour of (N-2,N-1)>
void write_colouring(std::ostream& out, const Colouring& c);
std::string to_canonical_string(const Colouring& c);

/// Parses the canonical format. Throws ParseError on an unknown version, a
/// malformed size line, a wrong row length, a colour id >= l, or truncation.
Colouring read_colouring(std::istream& in);
Colouring parse_colouring(std::string_view text);

Colouring load_colouring(const std::filesystem::path& path);
void save_colouring(const std::filesystem::path& path, const Colouring& c);

}  // namespace ramsey
