#pragma once

#include <cstdint>
#include <string>

#include "rackcode/rational.hpp"
#include "rackcode/types.hpp"

namespace rackcode {

/// All system parameters plus the derived quantities used throughout.
/// n = nbar*u nodes in nbar racks of u nodes; k = kbar*u + v with v in [0,u);
/// h failed nodes spread as b = h/hbar per host rack; dbar helper racks give
/// d = dbar*u + u - b helper nodes; delta in [1, hbar-1] is the cooperation
/// deficiency; sbar = dbar - kbar + 1; l is the per-node symbol count.
struct SystemParams {
  int n = 0;
  int u = 0;
  int k = 0;
  int h = 0;
  int hbar = 0;
  int delta = 0;
  int dbar = 0;
  Construction construction = Construction::stacked;

  // derived
  int nbar = 0;
  int kbar = 0;
  int v = 0;
  int r = 0;
  int rbar = 0;
  int b = 0;
  int sbar = 0;
  int d = 0;
  std::uint64_t l = 0;
  std::uint64_t B = 0;

  /// Base rows per instance: sbar^nbar (stacked) or 2^nbar = l (grouped).
  std::uint32_t base_rows() const;
  /// Instance count: sbar + hbar - delta (stacked), 1 (grouped).
  int instances() const;
};

/// Checks every invariant and fills in all derived fields. Throws
/// ParameterError naming the first violated condition.
SystemParams validate(int n, int u, int k, int h, int hbar, int delta, int dbar,
                      Construction construction);

/// Minimum inter-rack repair bandwidth in symbols,
/// h*(dbar+hbar-delta)*l / (dbar-kbar+hbar-delta+1), as an exact rational.
Rational lower_bound(int h, int dbar, int kbar, int hbar, int delta, std::uint64_t l);
Rational lower_bound(const SystemParams& p);

struct BandwidthPrediction {
  Rational download;
  Rational cooperative;
  Rational total;
};

/// Closed-form per-phase bandwidth of the given repair scheme on these
/// parameters. For b <= u-v the total equals lower_bound exactly; for
/// b > u-v it exceeds it by hbar*(b-u+v)*l/denominator.
BandwidthPrediction predicted_bandwidth(const SystemParams& p, Construction scheme);

std::string construction_name(Construction c);
Construction construction_from_name(const std::string& name);

}  // namespace rackcode
