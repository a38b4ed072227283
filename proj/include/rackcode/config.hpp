#pragma once

#include <optional>
#include <string>

#include "rackcode/failure.hpp"
#include "rackcode/field.hpp"
#include "rackcode/params.hpp"

namespace rackcode {

/// Flat key-value config: n, u, k, h, hbar, delta, dbar, construction,
/// q (optional; default smallest valid prime), seed (optional).
struct RawConfig {
  int n = 0;
  int u = 0;
  int k = 0;
  int h = 0;
  int hbar = 0;
  int delta = 0;
  int dbar = 0;
  std::string construction;
  std::optional<Symbol> q;
  std::uint64_t seed = 0;
};

RawConfig parse_config_text(const std::string& text);
RawConfig parse_config_file(const std::string& path);

/// Validated parameters plus a field that satisfies the construction's size
/// floor (q-1 >= n*sbar resp. 2n) and has pairwise-distinct evaluation points.
struct Instance {
  SystemParams params;
  Field field;
};

Instance resolve_config(const RawConfig& cfg);

/// Pattern file: keys `hosts`, `helpers` (comma-separated rack ids) and one
/// `failed.<rack>` line per host rack with its failed local node indices.
FailurePattern parse_pattern_file(const SystemParams& p, const std::string& path);
FailurePattern parse_pattern_text(const SystemParams& p, const std::string& text);

}  // namespace rackcode
