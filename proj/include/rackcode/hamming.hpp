#pragma once

#include <cstdint>
#include <vector>

#include "rackcode/types.hpp"

namespace rackcode {

/// The binary Hamming code V_0 of length nprime = 2^mbar - 1 together with its
/// nprime single-coordinate-flip translates V_1..V_nprime. The translates are
/// pairwise disjoint and cover [2^nprime], which is what lets the grouped
/// repair extend per-host row knowledge from V_0 rows to every row.
///
/// Bit convention: a codeword f = (f_0, ..., f_{nprime-1}) maps to the integer
/// sum f_t * 2^(nprime-1-t), i.e. f_0 is the most significant bit. Only this
/// reading makes the translate sets come out as {0,7},{3,4},{2,5},{1,6} for
/// mbar = 2, which downstream bookkeeping relies on.
struct HammingPartition {
  int mbar = 0;
  int nprime = 0;
  /// sets[i] holds V_i, ascending. sets.size() == nprime + 1.
  std::vector<std::vector<std::uint32_t>> sets;
  /// set_of[w] = index of the V_i containing word w; size 2^nprime.
  std::vector<int> set_of;
};

HammingPartition build_partition(int mbar);

/// Flip coordinate t of word w (coordinates read most-significant-first).
std::uint32_t flip_coordinate(std::uint32_t w, int t, int nprime);

/// Flipping coordinate t moves a V_0 word into V_{t+1}.
int translate_index(int t, int nprime);

}  // namespace rackcode
