#include "rackcode/repair_grouped.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "rackcode/radix.hpp"

namespace rackcode {

namespace {

Symbol rack_lambda(const SystemParams& p, const Field& f, int rack, int digit) {
  return f.pow(f.xi, std::uint64_t(rack) * p.sbar + digit);
}

Symbol theta_sum_flat(const FlatCodeword& cw, const SystemParams& p, const Field& f, int rack,
                      std::uint32_t a, int m) {
  Symbol acc = 0;
  for (int g = 0; g < p.u; ++g) {
    Symbol w = f.pow(f.theta, std::uint64_t(g) * m);
    acc = f.add(acc, f.mul(w, cw.at(rack * p.u + g, a)));
  }
  return acc;
}

std::uint32_t flip_row(const SystemParams& p, std::uint32_t a, int rack) {
  int digit = row_digit(a, rack, p.sbar, p.nbar);
  return row_substitute(a, rack, digit ^ 1, p.sbar, p.nbar);
}

}  // namespace

GroupAssignment make_groups(const SystemParams& p, const FailurePattern& pat) {
  if (p.construction != Construction::grouped)
    throw ParameterError("group assignment requires grouped parameters");
  const int nprime = p.hbar - p.delta + 1;
  if (p.hbar % nprime != 0)
    throw ParameterError("grouped repair requires (hbar-delta+1) to divide hbar");
  const int span = p.hbar - p.delta + 2;
  int mbar = 0;
  while ((1 << mbar) < span) ++mbar;
  if ((1 << mbar) != span)
    throw ParameterError("grouped repair requires hbar-delta+2 to be a power of two");

  GroupAssignment ga;
  ga.mbar = mbar;
  ga.group_of.resize(p.hbar);
  ga.pos_in_group.resize(p.hbar);
  for (int start = 0; start < p.hbar; start += nprime) {
    std::vector<int> group;
    for (int q = start; q < start + nprime; ++q) {
      group.push_back(pat.hosts[q]);
      ga.group_of[q] = start / nprime;
      ga.pos_in_group[q] = q - start;
    }
    ga.groups.push_back(std::move(group));
  }
  return ga;
}

Symbol helper_sum_g(const FlatCodeword& cw, const SystemParams& p, const Field& f,
                    const FailurePattern& pat, int p_ord, int source_rack, std::uint32_t a,
                    int m) {
  const int host_rack = pat.hosts[p_ord];
  return f.add(theta_sum_flat(cw, p, f, source_rack, a, m),
               theta_sum_flat(cw, p, f, source_rack, flip_row(p, a, host_rack), m));
}

GroupedRowSolution download_solve_row_g(const FlatCodeword& cw, const SystemParams& p,
                                        const Field& f, const FailurePattern& pat, int p_ord,
                                        std::uint32_t a, int m) {
  const bool tail = m >= p.u - p.v;
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

  std::vector<Symbol> lambdas;
  lambdas.reserve(W);
  lambdas.push_back(rack_lambda(p, f, host_rack, adigit));
  lambdas.push_back(rack_lambda(p, f, host_rack, adigit ^ 1));
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
    Symbol h = helper_sum_g(cw, p, f, pat, p_ord, j, a, m);
    Symbol lam = rack_lambda(p, f, j, row_digit(a, j, p.sbar, p.nbar));
    Symbol val = f.pow(lam, m);
    Symbol step = f.pow(lam, p.u);
    for (int w = 0; w < W; ++w) {
      rhs[w] = f.sub(rhs[w], f.mul(val, h));
      val = f.mul(val, step);
    }
  }

  std::vector<Symbol> sol = solve_linear(f, std::move(M), std::move(rhs));
  GroupedRowSolution out;
  out.own_plain = sol[0];
  out.own_flip = sol[1];
  out.cross.assign(sol.begin() + 2, sol.begin() + 2 + p.hbar - 1);
  out.uncon.assign(sol.begin() + 2 + p.hbar - 1, sol.end());
  return out;
}

GroupedDownload download_phase_g(const FlatCodeword& cw, const SystemParams& p, const Field& f,
                                 const FailurePattern& pat, const GroupAssignment& ga,
                                 const HammingPartition& hp, int p_ord,
                                 BandwidthLedger& ledger, TraceSink* trace) {
  const int host_rack = pat.hosts[p_ord];
  const std::vector<int>& group = ga.groups[ga.group_of[p_ord]];

  GroupedDownload dl;
  for (std::uint32_t a = 0; a < cw.rows; ++a)
    if (hp.set_of[row_puncture(a, group, p.sbar, p.nbar)] == 0) dl.rows.push_back(a);

  const std::size_t count = dl.rows.size();
  dl.own_plain.assign(p.b, std::vector<Symbol>(count, 0));
  dl.own_flip.assign(p.b, std::vector<Symbol>(count, 0));
  dl.cross.assign(p.b, std::vector<std::vector<Symbol>>(p.hbar));
  dl.unconnected.assign(p.b, {});

  for (int m = 0; m < p.b; ++m) {
    const bool tail = m >= p.u - p.v;
    for (int q = 0; q < p.hbar; ++q)
      if (q != p_ord) dl.cross[m][q].assign(count, 0);
    std::vector<int> uncon_racks;
    for (int z : pat.unconnected)
      if (!(tail && z == pat.extra_helper)) uncon_racks.push_back(z);
    for (int z : uncon_racks)
      dl.unconnected[m].push_back(RackTable{z, std::vector<Symbol>(count, 0)});

    for (std::size_t idx = 0; idx < count; ++idx) {
      GroupedRowSolution sol = download_solve_row_g(cw, p, f, pat, p_ord, dl.rows[idx], m);
      dl.own_plain[m][idx] = sol.own_plain;
      dl.own_flip[m][idx] = sol.own_flip;
      int ci = 0;
      for (int q = 0; q < p.hbar; ++q) {
        if (q == p_ord) continue;
        dl.cross[m][q][idx] = sol.cross[ci++];
      }
      for (std::size_t zi = 0; zi < uncon_racks.size(); ++zi)
        dl.unconnected[m][zi].values[idx] = sol.uncon[zi];
    }

    for (int j : pat.helpers) {
      ledger.add_download(host_rack, j, count);
      if (trace) trace->add(Phase::download, j, host_rack, count);
    }
    if (tail) {
      ledger.add_download(host_rack, pat.extra_helper, count);
      if (trace) trace->add(Phase::download, pat.extra_helper, host_rack, count);
    }
  }
  return dl;
}

GroupedDelta cooperative_phase_g(const SystemParams& p, const Field& f,
                                 const FailurePattern& pat, const GroupAssignment& ga,
                                 const HammingPartition& hp, int p_ord,
                                 const std::vector<GroupedDownload>& downloads,
                                 BandwidthLedger& ledger, TraceSink* trace) {
  (void)hp;
  const int host_rack = pat.hosts[p_ord];
  const int gid = ga.group_of[p_ord];
  const GroupedDownload& own = downloads[p_ord];
  const std::uint32_t l = p.base_rows();

  GroupedDelta out;
  out.delta.assign(p.b, std::vector<Symbol>(l, 0));
  std::vector<std::uint8_t> covered(l, 0);

  // Own V_0 rows plus the self-flipped rows, both solved during download.
  for (std::size_t idx = 0; idx < own.rows.size(); ++idx) {
    std::uint32_t a = own.rows[idx];
    std::uint32_t af = flip_row(p, a, host_rack);
    for (int m = 0; m < p.b; ++m) {
      out.delta[m][a] = own.own_plain[m][idx];
      out.delta[m][af] = own.own_flip[m][idx];
    }
    covered[a]++;
    covered[af]++;
  }

  // Each group peer's H table yields the rows flipped in that peer's digit.
  for (int q = 0; q < p.hbar; ++q) {
    if (q == p_ord || ga.group_of[q] != gid) continue;
    const int sender_rack = pat.hosts[q];
    const GroupedDownload& sender = downloads[q];
    if (sender.rows != own.rows)
      throw ParameterError("group members disagree on qualifying rows");
    for (std::size_t idx = 0; idx < own.rows.size(); ++idx) {
      std::uint32_t a = own.rows[idx];
      std::uint32_t af = flip_row(p, a, sender_rack);
      for (int m = 0; m < p.b; ++m)
        out.delta[m][af] = f.sub(sender.cross[m][p_ord][idx], out.delta[m][a]);
      covered[af]++;
    }
    ledger.add_cooperative(host_rack, sender_rack, std::uint64_t(p.b) * own.rows.size());
    if (trace)
      trace->add(Phase::cooperative, sender_rack, host_rack,
                 std::uint64_t(p.b) * own.rows.size());
  }

  // The translates must tile [l): every row seen exactly once.
  for (std::uint32_t a = 0; a < l; ++a) {
    if (covered[a] != 1)
      throw ParameterError("row coverage broken at row " + std::to_string(a) +
                           " (count=" + std::to_string(int(covered[a])) + ")");
  }
  return out;
}

std::vector<std::vector<Symbol>> final_decode_g(const FlatCodeword& cw, const SystemParams& p,
                                                const Field& f, const FailurePattern& pat,
                                                int p_ord, const GroupedDelta& delta) {
  const int host_rack = pat.hosts[p_ord];
  const std::vector<int>& failed = pat.failed[p_ord];
  std::vector<int> survivors;
  for (int g = 0; g < p.u; ++g)
    if (std::find(failed.begin(), failed.end(), g) == failed.end()) survivors.push_back(g);

  Matrix vander(p.b, p.b);
  for (int m = 0; m < p.b; ++m)
    for (int t = 0; t < p.b; ++t)
      vander.at(m, t) = f.pow(f.theta, std::uint64_t(failed[t]) * m);
  std::vector<std::vector<Symbol>> weight(p.b, std::vector<Symbol>(p.u));
  for (int m = 0; m < p.b; ++m)
    for (int g = 0; g < p.u; ++g) weight[m][g] = f.pow(f.theta, std::uint64_t(g) * m);

  std::vector<std::vector<Symbol>> repaired(failed.size(),
                                            std::vector<Symbol>(cw.rows, 0));
  std::vector<Symbol> rhs(p.b);
  for (std::uint32_t a = 0; a < cw.rows; ++a) {
    for (int m = 0; m < p.b; ++m) {
      Symbol val = delta.delta[m][a];
      for (int g : survivors)
        val = f.sub(val, f.mul(weight[m][g], cw.at(host_rack * p.u + g, a)));
      rhs[m] = val;
    }
    std::vector<Symbol> sol = solve_linear(f, vander, rhs);
    for (std::size_t t = 0; t < failed.size(); ++t) repaired[t][a] = sol[t];
  }
  return repaired;
}

GroupedRepairResult repair_g(const FlatCodeword& cw, const SystemParams& p, const Field& f,
                             const FailurePattern& pat, TraceSink* trace) {
  if (p.construction != Construction::grouped)
    throw ParameterError("grouped repair requires grouped parameters");
  if (cw.n != p.n || cw.rows != p.base_rows())
    throw ParameterError("codeword shape does not match parameters");

  GroupAssignment ga = make_groups(p, pat);
  HammingPartition hp = build_partition(ga.mbar);

  BandwidthLedger ledger(p.nbar);
  std::vector<GroupedDownload> downloads;
  downloads.reserve(p.hbar);
  for (int q = 0; q < p.hbar; ++q)
    downloads.push_back(download_phase_g(cw, p, f, pat, ga, hp, q, ledger, trace));

  GroupedRepairResult result{cw, std::move(ledger)};
  for (int q = 0; q < p.hbar; ++q) {
    GroupedDelta delta = cooperative_phase_g(p, f, pat, ga, hp, q, downloads, result.ledger, trace);
    std::vector<std::vector<Symbol>> repaired = final_decode_g(cw, p, f, pat, q, delta);
    const int host_rack = pat.hosts[q];
    for (std::size_t t = 0; t < pat.failed[q].size(); ++t) {
      const int node = host_rack * p.u + pat.failed[q][t];
      for (std::uint32_t a = 0; a < cw.rows; ++a)
        result.codeword.at(node, a) = repaired[t][a];
    }
  }
  return result;
}

}  // namespace rackcode
