#pragma once

// Parameter sets shared across the test suite.

#include <random>

#include "rackcode/config.hpp"
#include "rackcode/experiments.hpp"

namespace fixtures {

using namespace rackcode;

inline Instance make(int n, int u, int k, int h, int hbar, int delta, int dbar,
                     const char* construction) {
  RawConfig cfg;
  cfg.n = n;
  cfg.u = u;
  cfg.k = k;
  cfg.h = h;
  cfg.hbar = hbar;
  cfg.delta = delta;
  cfg.dbar = dbar;
  cfg.construction = construction;
  return resolve_config(cfg);
}

// n=12 stacked set (q resolves to 29): nbar=6, sbar=2, b=1, l=192.
inline Instance sketch12() { return make(12, 2, 5, 3, 3, 2, 3, "stacked"); }

// Same racks, both nodes of every host rack failed: b=2 > u-v with no
// unconnected rack left; pattern construction must reject it.
inline Instance sketch12_b2() { return make(12, 2, 5, 6, 3, 2, 3, "stacked"); }

// Feasible b=2 > u-v stacked set: nbar=7 leaves one unconnected rack. l=384.
inline Instance stacked14_b2() { return make(14, 2, 5, 6, 3, 2, 3, "stacked"); }

// Grouped set with q=37: nbar=8, kbar=3, dbar=4, delta=1, b=1, l=256.
inline Instance grouped16() { return make(16, 2, 7, 3, 3, 1, 4, "grouped"); }

// Grouped with b=2 > u-v, one unconnected rack for the extra helper. l=256.
inline Instance grouped16_b2() { return make(16, 2, 7, 6, 3, 1, 4, "grouped"); }

// u=3 grouped set (q=43): nbar=7, b=2 <= u-v, single group of three hosts. l=128.
inline Instance grouped21_u3() { return make(21, 3, 7, 6, 3, 1, 3, "grouped"); }

// Two cooperation groups: hbar=6, delta=4, groups of 3. l=1024, q=61.
inline Instance grouped30_two_groups() { return make(30, 3, 7, 12, 6, 4, 3, "grouped"); }

// Degenerate sbar=1 (dbar=kbar): l=2, q=11.
inline Instance stacked10_s1() { return make(10, 2, 4, 2, 2, 1, 2, "stacked"); }

inline StackedCodeword random_stacked(const Instance& inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return encode_stacked(inst.params, inst.field,
                        random_message(inst.params, rng, inst.field.q));
}

inline FlatCodeword random_flat(const Instance& inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return encode_flat(inst.params, inst.field,
                     random_message(inst.params, rng, inst.field.q));
}

inline FailurePattern pattern(const Instance& inst, std::vector<int> hosts,
                              std::vector<std::vector<int>> failed, std::vector<int> helpers) {
  return make_pattern(inst.params, std::move(hosts), std::move(failed), std::move(helpers));
}

}  // namespace fixtures
