#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rackcode/params.hpp"

namespace rackcode {

/// Which racks failed, which local nodes inside them, and which racks help.
/// hosts/helpers/unconnected partition [nbar). When b > u-v the repair needs
/// one extra download source; extra_helper is the lowest-indexed unconnected
/// rack, fixed here so runs are reproducible.
struct FailurePattern {
  std::vector<int> hosts;                // F, ascending, size hbar
  std::vector<std::vector<int>> failed;  // per host (parallel), ascending b-subsets of [u)
  std::vector<int> helpers;              // R, ascending, size dbar
  std::vector<int> unconnected;          // derived
  int extra_helper = -1;                 // set iff b > u-v

  int host_ordinal(int rack) const;  // position of rack in hosts, -1 if absent
};

FailurePattern make_pattern(const SystemParams& p, std::vector<int> hosts,
                            std::vector<std::vector<int>> failed, std::vector<int> helpers);

enum class Phase { download, cooperative };

/// beta1(host, helper) and beta2(receiver, sender) symbol counters; Eq-style
/// total = sum of both. Counters only ever record inter-rack transfers.
struct BandwidthLedger {
  int nbar = 0;
  std::vector<std::uint64_t> beta1;  // host-major: beta1[host*nbar + helper]
  std::vector<std::uint64_t> beta2;  // receiver-major

  BandwidthLedger() = default;
  explicit BandwidthLedger(int nbar_)
      : nbar(nbar_), beta1(std::size_t(nbar_) * nbar_, 0), beta2(std::size_t(nbar_) * nbar_, 0) {}

  void add_download(int host, int helper, std::uint64_t symbols);
  void add_cooperative(int receiver, int sender, std::uint64_t symbols);
  std::uint64_t download_total() const;
  std::uint64_t cooperative_total() const;
  std::uint64_t total() const { return download_total() + cooperative_total(); }
  void merge(const BandwidthLedger& other);
};

struct TraceRecord {
  Phase phase;
  int sender = -1;
  int receiver = -1;
  std::uint64_t symbols = 0;
};

/// Optional audit log of every inter-rack transfer, aggregated per
/// (phase, sender, receiver). Totals must match the ledger.
struct TraceSink {
  std::vector<TraceRecord> records;
  void add(Phase phase, int sender, int receiver, std::uint64_t symbols);
  std::uint64_t total() const;
};

}  // namespace rackcode
