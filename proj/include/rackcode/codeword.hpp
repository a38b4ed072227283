#pragma once

#include <cstdint>
#include <vector>

#include "rackcode/field.hpp"
#include "rackcode/params.hpp"

namespace rackcode {

/// Original data: k*l symbols, node j's block at [j*l, (j+1)*l).
using Message = std::vector<Symbol>;

/// One instance of the array code: n node columns of `rows` symbols each,
/// stored column-major (node i's symbols contiguous) to match the repair
/// protocols' whole-column reads inside a rack.
struct FlatCodeword {
  int n = 0;
  std::uint32_t rows = 0;
  std::vector<Symbol> data;

  FlatCodeword() = default;
  FlatCodeword(int n_, std::uint32_t rows_)
      : n(n_), rows(rows_), data(std::size_t(n_) * rows_, 0) {}
  Symbol at(int node, std::uint32_t row) const {
    return data[std::size_t(node) * rows + row];
  }
  Symbol& at(int node, std::uint32_t row) { return data[std::size_t(node) * rows + row]; }
};

/// sbar+hbar-delta independent instances sharing one parameter set; node
/// column iu+g is the concatenation of the instances' columns, so the
/// per-node length is l = instances * rows.
struct StackedCodeword {
  std::vector<FlatCodeword> instances;
};

/// theta^g * xi^(rack*sbar + digit): the diagonal entry the parity checks
/// apply to node rack*u+g in any row whose rack-th digit equals `digit`.
Symbol eval_point(const Field& f, int sbar, int rack, int g, int digit);

/// Evaluation point of node position `pos` in row `a`.
Symbol node_point(const SystemParams& p, const Field& f, int pos, std::uint32_t a);

/// Recovers the `unknown` positions of one row from the remaining positions,
/// using the first |unknown| parity equations (a Vandermonde minor on
/// pairwise-distinct points). row has size n and is updated in place.
void recover_row(const SystemParams& p, const Field& f, std::vector<Symbol>& row,
                 const std::vector<int>& unknown, std::uint32_t a);

/// Systematic encode: node columns 0..k-1 carry the message verbatim and the
/// r parity columns are solved row by row. Message layout: node j, instance y,
/// row a at msg[j*l + y*rows + a].
FlatCodeword encode_flat(const SystemParams& p, const Field& f, const Message& msg);
StackedCodeword encode_stacked(const SystemParams& p, const Field& f, const Message& msg);

/// True iff every parity check holds exactly.
bool parity_check(const SystemParams& p, const Field& f, const FlatCodeword& cw);
bool parity_check(const SystemParams& p, const Field& f, const StackedCodeword& cw);

/// Recomputes the node columns outside `known` (>= k indices required).
FlatCodeword reconstruct(const SystemParams& p, const Field& f, const FlatCodeword& cw,
                         const std::vector<int>& known);
StackedCodeword reconstruct(const SystemParams& p, const Field& f, const StackedCodeword& cw,
                            const std::vector<int>& known);

}  // namespace rackcode
