#pragma once
// Run configuration: a flat `key = value` text format with dotted keys, `#`
// comments, numeric expressions (pi, + - * /, parentheses), panel presets and
// named variants. See docs/config_schema.md.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glt/rate.hpp"

namespace glt {

struct Variant {
  std::string name;
  Scenario scenario;
};

struct RunConfig {
  Scenario base;
  DistanceGrid sweep{0.0, 150.0, 5.0};
  /// Distance for the single-point `keyrate` command.
  double distance_km = 50.0;
  std::optional<std::string> preset;
  /// Named scenario overrides in order of first appearance; empty means the
  /// base scenario alone, reported under the name "base".
  std::vector<Variant> variants;

  std::vector<Variant> scenarios() const;
};

/// Evaluates a numeric expression such as `2*pi/3`, `1e-6` or `-(pi/8)`.
/// Throws ConfigError on malformed input.
double evaluate_expression(const std::string& text);

RunConfig parse_config_text(const std::string& text);
/// Throws ConfigError if the file cannot be read or fails validation.
RunConfig parse_config(const std::string& path);

/// Built-in preset texts keyed by panel id "a" to "f".
const std::map<std::string, std::string>& preset_sources();
RunConfig load_preset(const std::string& id);

}  // namespace glt
