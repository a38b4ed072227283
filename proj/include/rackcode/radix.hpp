#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rackcode/types.hpp"

namespace rackcode {

/// Row index a in [sbar^nbar) with its sbar-ary digit vector
/// a = (a_{nbar-1}, ..., a_0), digit i carrying weight sbar^i.
struct RowIndex {
  std::uint32_t a = 0;
  int sbar = 2;
  int nbar = 0;
};

inline std::uint32_t pow_u32(std::uint32_t base, int exp) {
  std::uint32_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline int row_digit(std::uint32_t a, int i, int sbar, int nbar) {
  if (i < 0 || i >= nbar)
    throw ParameterError("digit position " + std::to_string(i) + " outside [0," +
                         std::to_string(nbar) + ")");
  return int(a / pow_u32(std::uint32_t(sbar), i) % std::uint32_t(sbar));
}

/// a with digit i replaced by j, all other digits unchanged.
inline std::uint32_t row_substitute(std::uint32_t a, int i, int j, int sbar, int nbar) {
  if (i < 0 || i >= nbar)
    throw ParameterError("digit position " + std::to_string(i) + " outside [0," +
                         std::to_string(nbar) + ")");
  if (j < 0 || j >= sbar)
    throw ParameterError("digit value " + std::to_string(j) + " outside [0," +
                         std::to_string(sbar) + ")");
  std::uint32_t w = pow_u32(std::uint32_t(sbar), i);
  int cur = int(a / w % std::uint32_t(sbar));
  return a + std::uint32_t(j - cur) * w;
}

/// Digits of a at the sorted positions J, reassembled as an sbar-ary number:
/// the digit at J[t] gets weight sbar^t.
inline std::uint32_t row_puncture(std::uint32_t a, const std::vector<int>& J, int sbar,
                                  int nbar) {
  std::uint32_t out = 0;
  std::uint32_t w = 1;
  int prev = -1;
  for (int pos : J) {
    if (pos <= prev) throw ParameterError("puncture coordinates must be strictly ascending");
    prev = pos;
    out += std::uint32_t(row_digit(a, pos, sbar, nbar)) * w;
    w *= std::uint32_t(sbar);
  }
  return out;
}

inline int row_digit(const RowIndex& r, int i) { return row_digit(r.a, i, r.sbar, r.nbar); }
inline RowIndex row_substitute(const RowIndex& r, int i, int j) {
  return RowIndex{row_substitute(r.a, i, j, r.sbar, r.nbar), r.sbar, r.nbar};
}
inline std::uint32_t row_puncture(const RowIndex& r, const std::vector<int>& J) {
  return row_puncture(r.a, J, r.sbar, r.nbar);
}

}  // namespace rackcode
