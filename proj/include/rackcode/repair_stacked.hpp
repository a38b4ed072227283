#pragma once

#include <cstdint>
#include <vector>

#include "rackcode/codeword.hpp"
#include "rackcode/failure.hpp"

namespace rackcode {

/// Solved helper sums of one rack, indexed by plain row a.
struct RackTable {
  int rack = -1;
  std::vector<Symbol> values;
};

/// Everything host ordinal p recovers during its download phase.
struct StackedDownload {
  /// own[m][x][a] = sum_g theta^(g m) c^((p+x) mod L)_(i_p u+g, a), every row a.
  std::vector<std::vector<std::vector<Symbol>>> own;
  /// cross[m][q][a] = H_(i_p, i_q)(a, m) for host ordinal q != p; slot q = p empty.
  /// These are the combinations host p later sends to the hosts it serves.
  std::vector<std::vector<std::vector<Symbol>>> cross;
  /// Sums of racks left unconnected in round m; a by-product of the solve,
  /// kept so tests can audit every recovered quantity.
  std::vector<std::vector<RackTable>> unconnected;
};

/// H_(i_p, j)(a, m): the aggregate rack j's relayer ships to host ordinal p,
/// sum over x in [sbar) of sum_g theta^(g m) c^((p+x) mod L)_(ju+g, a(i_p, a_(i_p) xor x)),
/// instance superscripts mod L = sbar+hbar-delta, digit shifts mod sbar.
Symbol helper_sum(const StackedCodeword& cw, const SystemParams& p, const Field& f,
                  const FailurePattern& pat, int p_ord, int source_rack, std::uint32_t a,
                  int m);

/// One (a, m) download solve. own[x] holds the instance-(p+x) sum at row
/// a(i_p, a_(i_p) xor x); cross follows ascending host ordinals skipping p;
/// uncon follows the racks left unconnected this round, ascending.
struct StackedRowSolution {
  std::vector<Symbol> own;
  std::vector<Symbol> cross;
  std::vector<Symbol> uncon;
};

StackedRowSolution download_solve_row(const StackedCodeword& cw, const SystemParams& p,
                                      const Field& f, const FailurePattern& pat, int p_ord,
                                      std::uint32_t a, int m);

StackedDownload download_phase(const StackedCodeword& cw, const SystemParams& p,
                               const Field& f, const FailurePattern& pat, int p_ord,
                               BandwidthLedger& ledger, TraceSink* trace = nullptr);

/// Host ordinals that send to host ordinal p during the cooperative phase.
/// Always hbar-delta of them, contiguous around p so the inductive unrolling
/// applies; the p = max(delta, hbar-delta) boundary uses the descending case.
std::vector<int> coop_sets(int p, int hbar, int delta);

struct StackedDelta {
  /// delta[m][y][a] = sum_g theta^(g m) c^(y)_(i_p u+g, a), all L instances.
  std::vector<std::vector<std::vector<Symbol>>> delta;
};

/// Unrolls the received H_(i_q, i_p) tables into the full Delta table.
/// Requires the download phase of every ordinal in coop_sets(p) (their cross
/// tables are what gets transferred, and what the ledger charges).
StackedDelta cooperative_phase(const SystemParams& p, const Field& f,
                               const FailurePattern& pat, int p_ord,
                               const std::vector<StackedDownload>& downloads,
                               BandwidthLedger& ledger, TraceSink* trace = nullptr);

/// Solves the b x b Vandermonde system per (a, y); repaired[t][y*rows + a]
/// is the column of the t-th failed node of host ordinal p.
std::vector<std::vector<Symbol>> final_decode(const StackedCodeword& cw,
                                              const SystemParams& p, const Field& f,
                                              const FailurePattern& pat, int p_ord,
                                              const StackedDelta& delta);

struct StackedRepairResult {
  StackedCodeword codeword;
  BandwidthLedger ledger;
};

/// Full two-phase repair of every host rack, with bandwidth metering.
StackedRepairResult repair(const StackedCodeword& cw, const SystemParams& p, const Field& f,
                           const FailurePattern& pat, TraceSink* trace = nullptr);

}  // namespace rackcode
