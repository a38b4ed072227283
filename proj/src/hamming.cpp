#include "rackcode/hamming.hpp"

#include <algorithm>
#include <string>

namespace rackcode {

HammingPartition build_partition(int mbar) {
  if (mbar < 1) throw ParameterError("Hamming partition requires mbar >= 1");
  if (mbar > 16) throw ParameterError("Hamming partition mbar too large");
  HammingPartition hp;
  hp.mbar = mbar;
  hp.nprime = (1 << mbar) - 1;
  const std::uint32_t words = 1u << hp.nprime;
  hp.sets.assign(hp.nprime + 1, {});
  hp.set_of.assign(words, -1);

  // V_0: parity-check columns are the nonzero vectors of F_2^mbar in ascending
  // numeric order, so coordinate t contributes syndrome t+1. Coordinate t is
  // integer bit nprime-1-t.
  for (std::uint32_t w = 0; w < words; ++w) {
    std::uint32_t syndrome = 0;
    for (int t = 0; t < hp.nprime; ++t)
      if (w >> (hp.nprime - 1 - t) & 1u) syndrome ^= std::uint32_t(t + 1);
    if (syndrome == 0) {
      hp.sets[0].push_back(w);
      hp.set_of[w] = 0;
    }
  }
  for (int t = 0; t < hp.nprime; ++t) {
    for (std::uint32_t w : hp.sets[0]) {
      std::uint32_t flipped = flip_coordinate(w, t, hp.nprime);
      hp.sets[t + 1].push_back(flipped);
      if (hp.set_of[flipped] != -1)
        throw ParameterError("Hamming translates overlap; broken partition");
      hp.set_of[flipped] = t + 1;
    }
    std::sort(hp.sets[t + 1].begin(), hp.sets[t + 1].end());
  }
  for (std::uint32_t w = 0; w < words; ++w)
    if (hp.set_of[w] == -1) throw ParameterError("Hamming translates do not cover all words");
  return hp;
}

std::uint32_t flip_coordinate(std::uint32_t w, int t, int nprime) {
  if (t < 0 || t >= nprime)
    throw ParameterError("coordinate " + std::to_string(t) + " outside [0," +
                         std::to_string(nprime) + ")");
  return w ^ (1u << (nprime - 1 - t));
}

int translate_index(int t, int nprime) {
  if (t < 0 || t >= nprime)
    throw ParameterError("translate position " + std::to_string(t) + " outside [0," +
                         std::to_string(nprime) + ")");
  return t + 1;
}

}  // namespace rackcode
