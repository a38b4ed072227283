#include "rackcode/params.hpp"

#include "rackcode/radix.hpp"

namespace rackcode {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw ParameterError(what);
}

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

std::uint32_t SystemParams::base_rows() const {
  return pow_u32(std::uint32_t(sbar), nbar);
}

int SystemParams::instances() const {
  return construction == Construction::stacked ? sbar + hbar - delta : 1;
}

SystemParams validate(int n, int u, int k, int h, int hbar, int delta, int dbar,
                      Construction construction) {
  require(n >= 1 && u >= 1 && k >= 1 && h >= 1 && hbar >= 1 && delta >= 1 && dbar >= 1,
          "all parameters must be positive integers");
  require(n % u == 0, "u must divide n");
  require(u > 1, "u must exceed 1 (u=1 is the homogeneous model)");
  require(u <= k, "u must not exceed k");
  require(u <= n - k, "u must not exceed n-k (full-rack repairability)");

  SystemParams p;
  p.n = n;
  p.u = u;
  p.k = k;
  p.h = h;
  p.hbar = hbar;
  p.delta = delta;
  p.dbar = dbar;
  p.construction = construction;

  p.nbar = n / u;
  p.v = k % u;
  p.kbar = (k - p.v) / u;
  p.r = n - k;
  p.rbar = p.nbar - p.kbar;

  require(h % hbar == 0, "hbar must divide h");
  p.b = h / hbar;
  require(p.b >= 1 && p.b <= u, "b = h/hbar must lie in [1, u]");
  require(h <= p.r, "h must not exceed n-k");
  require(delta >= 1 && delta <= hbar - 1, "delta must lie in [1, hbar-1]");

  const int dbar_lo = (p.b <= u - p.v) ? p.kbar : p.kbar + 1;
  const int dbar_hi = p.nbar - hbar;
  require(dbar >= dbar_lo && dbar <= dbar_hi,
          "dbar=" + std::to_string(dbar) + " outside [" + std::to_string(dbar_lo) + ", " +
              std::to_string(dbar_hi) + "]");

  p.sbar = dbar - p.kbar + 1;
  p.d = dbar * u + u - p.b;
  require(p.d >= k, "helper node count d = dbar*u+u-b must be at least k");

  if (construction == Construction::grouped) {
    require(dbar == p.kbar + 1, "grouped construction requires dbar = kbar+1");
    require(is_power_of_two(hbar - delta + 2),
            "grouped construction requires hbar-delta+2 to be a power of two");
    require(hbar % (hbar - delta + 1) == 0,
            "grouped construction requires (hbar-delta+1) to divide hbar");
  }

  require(p.nbar <= 31, "nbar too large for this implementation");
  std::uint64_t rows = 1;
  for (int i = 0; i < p.nbar; ++i) {
    rows *= std::uint64_t(p.sbar);
    require(rows <= (1ull << 40), "sub-packetization overflows the supported range");
  }
  p.l = (construction == Construction::stacked)
            ? std::uint64_t(p.sbar + hbar - delta) * rows
            : rows;
  p.B = std::uint64_t(k) * p.l;
  return p;
}

Rational lower_bound(int h, int dbar, int kbar, int hbar, int delta, std::uint64_t l) {
  std::int64_t num = std::int64_t(h) * (dbar + hbar - delta) * std::int64_t(l);
  std::int64_t den = dbar - kbar + hbar - delta + 1;
  return Rational(num, den);
}

Rational lower_bound(const SystemParams& p) {
  return lower_bound(p.h, p.dbar, p.kbar, p.hbar, p.delta, p.l);
}

BandwidthPrediction predicted_bandwidth(const SystemParams& p, Construction scheme) {
  const std::int64_t den = (scheme == Construction::stacked) ? p.sbar + p.hbar - p.delta
                                                             : p.hbar - p.delta + 2;
  const std::int64_t l = std::int64_t(p.l);
  BandwidthPrediction out;
  if (p.b <= p.u - p.v) {
    out.download = Rational(std::int64_t(p.dbar) * p.h * l, den);
  } else {
    out.download = Rational(
        (std::int64_t(p.dbar) * p.h + std::int64_t(p.hbar) * (p.b - p.u + p.v)) * l, den);
  }
  out.cooperative = Rational(std::int64_t(p.h) * (p.hbar - p.delta) * l, den);
  out.total = out.download + out.cooperative;
  return out;
}

std::string construction_name(Construction c) {
  return c == Construction::stacked ? "stacked" : "grouped";
}

Construction construction_from_name(const std::string& name) {
  if (name == "stacked") return Construction::stacked;
  if (name == "grouped") return Construction::grouped;
  throw ParameterError("unknown construction '" + name + "' (expected stacked|grouped)");
}

}  // namespace rackcode
