#pragma once

#include <cstdint>
#include <vector>

#include "rackcode/codeword.hpp"
#include "rackcode/failure.hpp"
#include "rackcode/hamming.hpp"
#include "rackcode/repair_stacked.hpp"  // RackTable

namespace rackcode {

/// Host racks split into consecutive blocks of hbar-delta+1 (sorted order);
/// cooperation stays inside a block. pos_in_group is the rack's puncture
/// coordinate within its block.
struct GroupAssignment {
  std::vector<std::vector<int>> groups;  // rack ids, ascending within each group
  std::vector<int> group_of;             // by host ordinal
  std::vector<int> pos_in_group;         // by host ordinal
  int mbar = 0;                          // hbar-delta+2 = 2^mbar
};

GroupAssignment make_groups(const SystemParams& p, const FailurePattern& pat);

/// H_(i_p, j)(a, m) = sum_g theta^(g m) c_(ju+g, a)
///                  + sum_g theta^(g m) c_(ju+g, a(i_p, a_(i_p) xor 1)).
Symbol helper_sum_g(const FlatCodeword& cw, const SystemParams& p, const Field& f,
                    const FailurePattern& pat, int p_ord, int source_rack, std::uint32_t a,
                    int m);

/// Download-phase results of host ordinal p, restricted to the rows whose
/// group-punctured pattern lies in V_0.
struct GroupedDownload {
  std::vector<std::uint32_t> rows;  // qualifying rows, ascending
  /// own_plain[m][idx]: Delta at rows[idx]; own_flip[m][idx]: Delta at the
  /// self-flipped row rows[idx](i_p, a_(i_p) xor 1).
  std::vector<std::vector<Symbol>> own_plain;
  std::vector<std::vector<Symbol>> own_flip;
  /// cross[m][q][idx] = H_(i_p, i_q)(rows[idx], m), host ordinal q != p.
  std::vector<std::vector<std::vector<Symbol>>> cross;
  std::vector<std::vector<RackTable>> unconnected;  // per round, audit only
};

struct GroupedRowSolution {
  Symbol own_plain = 0;
  Symbol own_flip = 0;
  std::vector<Symbol> cross;
  std::vector<Symbol> uncon;
};

GroupedRowSolution download_solve_row_g(const FlatCodeword& cw, const SystemParams& p,
                                        const Field& f, const FailurePattern& pat, int p_ord,
                                        std::uint32_t a, int m);

GroupedDownload download_phase_g(const FlatCodeword& cw, const SystemParams& p, const Field& f,
                                 const FailurePattern& pat, const GroupAssignment& ga,
                                 const HammingPartition& hp, int p_ord,
                                 BandwidthLedger& ledger, TraceSink* trace = nullptr);

struct GroupedDelta {
  /// delta[m][a] for every row a in [l).
  std::vector<std::vector<Symbol>> delta;
};

/// Extends the V_0-row knowledge to all rows: the self-flip rows come from the
/// download solve and each group peer's H contributes the rows obtained by
/// flipping that peer's digit. Coverage of [l) is checked explicitly.
GroupedDelta cooperative_phase_g(const SystemParams& p, const Field& f,
                                 const FailurePattern& pat, const GroupAssignment& ga,
                                 const HammingPartition& hp, int p_ord,
                                 const std::vector<GroupedDownload>& downloads,
                                 BandwidthLedger& ledger, TraceSink* trace = nullptr);

/// repaired[t][a]: column of the t-th failed node of host ordinal p.
std::vector<std::vector<Symbol>> final_decode_g(const FlatCodeword& cw, const SystemParams& p,
                                                const Field& f, const FailurePattern& pat,
                                                int p_ord, const GroupedDelta& delta);

struct GroupedRepairResult {
  FlatCodeword codeword;
  BandwidthLedger ledger;
};

GroupedRepairResult repair_g(const FlatCodeword& cw, const SystemParams& p, const Field& f,
                             const FailurePattern& pat, TraceSink* trace = nullptr);

}  // namespace rackcode
