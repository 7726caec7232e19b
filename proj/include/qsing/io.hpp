#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qsing/setting.hpp"

namespace qsing {

/// Raised on malformed input text; distinct from domain errors so callers can
/// map it to a dedicated exit code.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the block text format. Each block starts with `quiver <k>` followed
/// by an `alpha` line and any number of `arrow i j mult` / `loops v unm mk`
/// lines; `#` starts a comment. Repeated arrow and loops lines accumulate.
std::vector<MarkedQuiverSetting> parse_settings(const std::string& text);

/// Parses exactly one setting, rejecting empty input.
MarkedQuiverSetting parse_setting(const std::string& text);

/// Emits one block in canonical vertex order with 1-based indices.
std::string emit_setting(const MarkedQuiverSetting& s);

std::string read_file(const std::string& path);

}  // namespace qsing
