#include "rackcode/failure.hpp"

#include <algorithm>
#include <numeric>

namespace rackcode {

int FailurePattern::host_ordinal(int rack) const {
  auto it = std::lower_bound(hosts.begin(), hosts.end(), rack);
  if (it == hosts.end() || *it != rack) return -1;
  return int(it - hosts.begin());
}

FailurePattern make_pattern(const SystemParams& p, std::vector<int> hosts,
                            std::vector<std::vector<int>> failed, std::vector<int> helpers) {
  FailurePattern pat;
  pat.hosts = std::move(hosts);
  pat.failed = std::move(failed);
  pat.helpers = std::move(helpers);

  if (int(pat.hosts.size()) != p.hbar)
    throw ParameterError("pattern must name exactly hbar host racks");
  if (int(pat.helpers.size()) != p.dbar)
    throw ParameterError("pattern must name exactly dbar helper racks");
  if (pat.failed.size() != pat.hosts.size())
    throw ParameterError("pattern needs one failed-node set per host rack");

  std::vector<int> role(p.nbar, 0);  // 0 free, 1 host, 2 helper
  int prev = -1;
  for (int rack : pat.hosts) {
    if (rack < 0 || rack >= p.nbar) throw ParameterError("host rack index out of range");
    if (rack <= prev) throw ParameterError("host racks must be strictly ascending");
    prev = rack;
    role[rack] = 1;
  }
  prev = -1;
  for (int rack : pat.helpers) {
    if (rack < 0 || rack >= p.nbar) throw ParameterError("helper rack index out of range");
    if (rack <= prev) throw ParameterError("helper racks must be strictly ascending");
    prev = rack;
    if (role[rack] != 0) throw ParameterError("helper racks must be disjoint from host racks");
    role[rack] = 2;
  }
  for (std::size_t i = 0; i < pat.failed.size(); ++i) {
    const std::vector<int>& locals = pat.failed[i];
    if (int(locals.size()) != p.b)
      throw ParameterError("each host rack must fail exactly b nodes");
    int lp = -1;
    for (int g : locals) {
      if (g < 0 || g >= p.u) throw ParameterError("failed local node index out of range");
      if (g <= lp) throw ParameterError("failed local indices must be strictly ascending");
      lp = g;
    }
  }
  for (int rack = 0; rack < p.nbar; ++rack)
    if (role[rack] == 0) pat.unconnected.push_back(rack);

  if (p.b > p.u - p.v) {
    if (pat.unconnected.empty())
      throw ParameterError(
          "b > u-v needs an extra helper rack but no unconnected rack is available "
          "(requires hbar + dbar < nbar)");
    pat.extra_helper = pat.unconnected.front();
  }
  return pat;
}

void BandwidthLedger::add_download(int host, int helper, std::uint64_t symbols) {
  beta1[std::size_t(host) * nbar + helper] += symbols;
}

void BandwidthLedger::add_cooperative(int receiver, int sender, std::uint64_t symbols) {
  beta2[std::size_t(receiver) * nbar + sender] += symbols;
}

std::uint64_t BandwidthLedger::download_total() const {
  return std::accumulate(beta1.begin(), beta1.end(), std::uint64_t(0));
}

std::uint64_t BandwidthLedger::cooperative_total() const {
  return std::accumulate(beta2.begin(), beta2.end(), std::uint64_t(0));
}

void BandwidthLedger::merge(const BandwidthLedger& other) {
  if (other.nbar != nbar) throw ParameterError("ledger rack counts differ");
  for (std::size_t i = 0; i < beta1.size(); ++i) beta1[i] += other.beta1[i];
  for (std::size_t i = 0; i < beta2.size(); ++i) beta2[i] += other.beta2[i];
}

void TraceSink::add(Phase phase, int sender, int receiver, std::uint64_t symbols) {
  for (TraceRecord& rec : records) {
    if (rec.phase == phase && rec.sender == sender && rec.receiver == receiver) {
      rec.symbols += symbols;
      return;
    }
  }
  records.push_back(TraceRecord{phase, sender, receiver, symbols});
}

std::uint64_t TraceSink::total() const {
  std::uint64_t t = 0;
  for (const TraceRecord& rec : records) t += rec.symbols;
  return t;
}

}  // namespace rackcode
