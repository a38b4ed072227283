#include "rackcode/repair_stacked.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "rackcode/radix.hpp"

namespace rackcode {

namespace {

Symbol rack_lambda(const SystemParams& p, const Field& f, int rack, int digit) {
  return f.pow(f.xi, std::uint64_t(rack) * p.sbar + digit);
}

// Sum over the rack's u columns with theta^(g m) weights, one instance, one row.
Symbol theta_sum(const StackedCodeword& cw, const SystemParams& p, const Field& f, int rack,
                 int y, std::uint32_t a, int m) {
  Symbol acc = 0;
  for (int g = 0; g < p.u; ++g) {
    Symbol w = f.pow(f.theta, std::uint64_t(g) * m);
    acc = f.add(acc, f.mul(w, cw.instances[y].at(rack * p.u + g, a)));
  }
  return acc;
}

}  // namespace

Symbol helper_sum(const StackedCodeword& cw, const SystemParams& p, const Field& f,
                  const FailurePattern& pat, int p_ord, int source_rack, std::uint32_t a,
                  int m) {
  const int L = p.instances();
  const int host_rack = pat.hosts[p_ord];
  const int adigit = row_digit(a, host_rack, p.sbar, p.nbar);
  Symbol acc = 0;
  for (int x = 0; x < p.sbar; ++x) {
    int y = (p_ord + x) % L;
    std::uint32_t shifted = row_substitute(a, host_rack, (adigit + x) % p.sbar, p.sbar, p.nbar);
    acc = f.add(acc, theta_sum(cw, p, f, source_rack, y, shifted, m));
  }
  return acc;
}

StackedRowSolution download_solve_row(const StackedCodeword& cw, const SystemParams& p,
                                      const Field& f, const FailurePattern& pat, int p_ord,
                                      std::uint32_t a, int m) {
  const bool tail = m >= p.u - p.v;  // rounds that lose one parity family
  const int W = tail ? p.rbar - 1 : p.rbar;
  const int host_rack = pat.hosts[p_ord];
  const int adigit = row_digit(a, host_rack, p.sbar, p.nbar);

  std::vector<int> helper_racks = pat.helpers;
  std::vector<int> uncon_racks;
  for (int z : pat.unconnected) {
    if (tail && z == pat.extra_helper) continue;
    uncon_racks.push_back(z);
  }
  if (tail) {
    helper_racks.push_back(pat.extra_helper);
    std::sort(helper_racks.begin(), helper_racks.end());
  }

  // Unknowns: sbar own sums, hbar-1 cross sums, remaining unconnected sums.
  std::vector<Symbol> lambdas;
  lambdas.reserve(W);
  for (int x = 0; x < p.sbar; ++x)
    lambdas.push_back(rack_lambda(p, f, host_rack, (adigit + x) % p.sbar));
  for (int q = 0; q < p.hbar; ++q) {
    if (q == p_ord) continue;
    int rack = pat.hosts[q];
    lambdas.push_back(rack_lambda(p, f, rack, row_digit(a, rack, p.sbar, p.nbar)));
  }
  for (int z : uncon_racks)
    lambdas.push_back(rack_lambda(p, f, z, row_digit(a, z, p.sbar, p.nbar)));
  assert(int(lambdas.size()) == W);

  Matrix M(W, W);
  for (int col = 0; col < W; ++col) {
    Symbol val = f.pow(lambdas[col], m);
    Symbol step = f.pow(lambdas[col], p.u);
    for (int w = 0; w < W; ++w) {
      M.at(w, col) = val;
      val = f.mul(val, step);
    }
  }

  std::vector<Symbol> rhs(W, 0);
  for (int j : helper_racks) {
    Symbol h = helper_sum(cw, p, f, pat, p_ord, j, a, m);
    Symbol lam = rack_lambda(p, f, j, row_digit(a, j, p.sbar, p.nbar));
    Symbol val = f.pow(lam, m);
    Symbol step = f.pow(lam, p.u);
    for (int w = 0; w < W; ++w) {
      rhs[w] = f.sub(rhs[w], f.mul(val, h));
      val = f.mul(val, step);
    }
  }

  std::vector<Symbol> sol = solve_linear(f, std::move(M), std::move(rhs));
  StackedRowSolution out;
  out.own.assign(sol.begin(), sol.begin() + p.sbar);
  out.cross.assign(sol.begin() + p.sbar, sol.begin() + p.sbar + p.hbar - 1);
  out.uncon.assign(sol.begin() + p.sbar + p.hbar - 1, sol.end());
  return out;
}

StackedDownload download_phase(const StackedCodeword& cw, const SystemParams& p,
                               const Field& f, const FailurePattern& pat, int p_ord,
                               BandwidthLedger& ledger, TraceSink* trace) {
  const std::uint32_t rows = p.base_rows();
  const int host_rack = pat.hosts[p_ord];

  StackedDownload dl;
  dl.own.assign(p.b, std::vector<std::vector<Symbol>>(p.sbar, std::vector<Symbol>(rows, 0)));
  dl.cross.assign(p.b, std::vector<std::vector<Symbol>>(p.hbar));
  dl.unconnected.assign(p.b, {});

  for (int m = 0; m < p.b; ++m) {
    const bool tail = m >= p.u - p.v;
    for (int q = 0; q < p.hbar; ++q)
      if (q != p_ord) dl.cross[m][q].assign(rows, 0);
    std::vector<int> uncon_racks;
    for (int z : pat.unconnected)
      if (!(tail && z == pat.extra_helper)) uncon_racks.push_back(z);
    for (int z : uncon_racks)
      dl.unconnected[m].push_back(RackTable{z, std::vector<Symbol>(rows, 0)});

    for (std::uint32_t a = 0; a < rows; ++a) {
      StackedRowSolution sol = download_solve_row(cw, p, f, pat, p_ord, a, m);
      const int adigit = row_digit(a, host_rack, p.sbar, p.nbar);
      for (int x = 0; x < p.sbar; ++x) {
        std::uint32_t plain =
            row_substitute(a, host_rack, (adigit + x) % p.sbar, p.sbar, p.nbar);
        dl.own[m][x][plain] = sol.own[x];
      }
      int ci = 0;
      for (int q = 0; q < p.hbar; ++q) {
        if (q == p_ord) continue;
        dl.cross[m][q][a] = sol.cross[ci++];
      }
      for (std::size_t zi = 0; zi < uncon_racks.size(); ++zi)
        dl.unconnected[m][zi].values[a] = sol.uncon[zi];
    }

    // One H symbol per row from each helper this round.
    for (int j : pat.helpers) {
      ledger.add_download(host_rack, j, rows);
      if (trace) trace->add(Phase::download, j, host_rack, rows);
    }
    if (tail) {
      ledger.add_download(host_rack, pat.extra_helper, rows);
      if (trace) trace->add(Phase::download, pat.extra_helper, host_rack, rows);
    }
  }
  return dl;
}

std::vector<int> coop_sets(int p, int hbar, int delta) {
  if (delta < 1 || delta > hbar - 1)
    throw ParameterError("delta must lie in [1, hbar-1]");
  if (p < 0 || p >= hbar) throw ParameterError("host ordinal out of range");
  std::vector<int> s;
  if (p < delta) {
    for (int q = p + 1; q <= p + hbar - delta; ++q) s.push_back(q);
  } else if (p < hbar - delta) {
    for (int q = delta - 1; q <= p - 1; ++q) s.push_back(q);
    for (int q = p + 1; q <= hbar - 1; ++q) s.push_back(q);
  } else {
    // p >= max(delta, hbar-delta): descending window, covers the boundary
    // ordinal the three-case split leaves out.
    for (int q = p - hbar + delta; q <= p - 1; ++q) s.push_back(q);
  }
  return s;
}

StackedDelta cooperative_phase(const SystemParams& p, const Field& f,
                               const FailurePattern& pat, int p_ord,
                               const std::vector<StackedDownload>& downloads,
                               BandwidthLedger& ledger, TraceSink* trace) {
  const int L = p.instances();
  const std::uint32_t rows = p.base_rows();
  const int host_rack = pat.hosts[p_ord];

  StackedDelta out;
  out.delta.assign(p.b, std::vector<std::vector<Symbol>>(L));
  std::vector<bool> have(L, false);
  for (int m = 0; m < p.b; ++m)
    for (int x = 0; x < p.sbar; ++x)
      out.delta[m][(p_ord + x) % L] = downloads[p_ord].own[m][x];
  for (int x = 0; x < p.sbar; ++x) have[(p_ord + x) % L] = true;

  std::vector<int> senders = coop_sets(p_ord, p.hbar, p.delta);
  std::vector<int> ascending, descending;
  for (int q : senders) (q > p_ord ? ascending : descending).push_back(q);
  std::sort(ascending.begin(), ascending.end());
  std::sort(descending.begin(), descending.end(), std::greater<int>());

  // Ascending: peel the newest instance (q+sbar-1) off H_(i_q, i_p);
  // descending: peel the oldest (q). Each step completes one instance.
  for (int q : ascending) {
    const int sender_rack = pat.hosts[q];
    const int target = (q + p.sbar - 1) % L;
    assert(!have[target]);
    for (int m = 0; m < p.b; ++m) {
      std::vector<Symbol> filled(rows, 0);
      for (std::uint32_t a = 0; a < rows; ++a) {
        const int qdigit = row_digit(a, sender_rack, p.sbar, p.nbar);
        Symbol val = downloads[q].cross[m][p_ord][a];
        for (int x = 0; x + 1 < p.sbar; ++x) {
          std::uint32_t ar =
              row_substitute(a, sender_rack, (qdigit + x) % p.sbar, p.sbar, p.nbar);
          val = f.sub(val, out.delta[m][(q + x) % L][ar]);
        }
        std::uint32_t target_row =
            row_substitute(a, sender_rack, (qdigit + p.sbar - 1) % p.sbar, p.sbar, p.nbar);
        filled[target_row] = val;
      }
      out.delta[m][target] = std::move(filled);
    }
    have[target] = true;
    ledger.add_cooperative(host_rack, sender_rack, std::uint64_t(p.b) * rows);
    if (trace) trace->add(Phase::cooperative, sender_rack, host_rack, std::uint64_t(p.b) * rows);
  }
  for (int q : descending) {
    const int sender_rack = pat.hosts[q];
    const int target = q % L;
    assert(!have[target]);
    for (int m = 0; m < p.b; ++m) {
      std::vector<Symbol> filled(rows, 0);
      for (std::uint32_t a = 0; a < rows; ++a) {
        const int qdigit = row_digit(a, sender_rack, p.sbar, p.nbar);
        Symbol val = downloads[q].cross[m][p_ord][a];
        for (int x = 1; x < p.sbar; ++x) {
          std::uint32_t ar =
              row_substitute(a, sender_rack, (qdigit + x) % p.sbar, p.sbar, p.nbar);
          val = f.sub(val, out.delta[m][(q + x) % L][ar]);
        }
        filled[a] = val;
      }
      out.delta[m][target] = std::move(filled);
    }
    have[target] = true;
    ledger.add_cooperative(host_rack, sender_rack, std::uint64_t(p.b) * rows);
    if (trace) trace->add(Phase::cooperative, sender_rack, host_rack, std::uint64_t(p.b) * rows);
  }
  for (int y = 0; y < L; ++y) assert(have[y]);
  return out;
}

std::vector<std::vector<Symbol>> final_decode(const StackedCodeword& cw,
                                              const SystemParams& p, const Field& f,
                                              const FailurePattern& pat, int p_ord,
                                              const StackedDelta& delta) {
  const int L = p.instances();
  const std::uint32_t rows = p.base_rows();
  const int host_rack = pat.hosts[p_ord];
  const std::vector<int>& failed = pat.failed[p_ord];
  std::vector<int> survivors;
  for (int g = 0; g < p.u; ++g)
    if (std::find(failed.begin(), failed.end(), g) == failed.end()) survivors.push_back(g);

  std::vector<std::vector<Symbol>> repaired(
      failed.size(), std::vector<Symbol>(std::uint64_t(L) * rows, 0));
  Matrix vander(p.b, p.b);
  for (int m = 0; m < p.b; ++m)
    for (int t = 0; t < p.b; ++t)
      vander.at(m, t) = f.pow(f.theta, std::uint64_t(failed[t]) * m);

  std::vector<std::vector<Symbol>> weight(p.b, std::vector<Symbol>(p.u));
  for (int m = 0; m < p.b; ++m)
    for (int g = 0; g < p.u; ++g) weight[m][g] = f.pow(f.theta, std::uint64_t(g) * m);

  std::vector<Symbol> rhs(p.b);
  for (int y = 0; y < L; ++y) {
    for (std::uint32_t a = 0; a < rows; ++a) {
      for (int m = 0; m < p.b; ++m) {
        Symbol val = delta.delta[m][y][a];
        for (int g : survivors)
          val = f.sub(val, f.mul(weight[m][g], cw.instances[y].at(host_rack * p.u + g, a)));
        rhs[m] = val;
      }
      std::vector<Symbol> sol = solve_linear(f, vander, rhs);
      for (std::size_t t = 0; t < failed.size(); ++t)
        repaired[t][std::uint64_t(y) * rows + a] = sol[t];
    }
  }
  return repaired;
}

StackedRepairResult repair(const StackedCodeword& cw, const SystemParams& p, const Field& f,
                           const FailurePattern& pat, TraceSink* trace) {
  if (p.construction != Construction::stacked)
    throw ParameterError("stacked repair requires stacked parameters");
  if (int(cw.instances.size()) != p.instances())
    throw ParameterError("codeword instance count does not match parameters");

  BandwidthLedger ledger(p.nbar);
  std::vector<StackedDownload> downloads;
  downloads.reserve(p.hbar);
  for (int q = 0; q < p.hbar; ++q)
    downloads.push_back(download_phase(cw, p, f, pat, q, ledger, trace));

  StackedRepairResult result{cw, std::move(ledger)};
  const std::uint32_t rows = p.base_rows();
  for (int q = 0; q < p.hbar; ++q) {
    StackedDelta delta = cooperative_phase(p, f, pat, q, downloads, result.ledger, trace);
    std::vector<std::vector<Symbol>> repaired = final_decode(cw, p, f, pat, q, delta);
    const int host_rack = pat.hosts[q];
    for (std::size_t t = 0; t < pat.failed[q].size(); ++t) {
      const int node = host_rack * p.u + pat.failed[q][t];
      for (int y = 0; y < p.instances(); ++y)
        for (std::uint32_t a = 0; a < rows; ++a)
          result.codeword.instances[y].at(node, a) = repaired[t][std::uint64_t(y) * rows + a];
    }
  }
  return result;
}

}  // namespace rackcode
