#include "rackcode/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "rackcode/repair_grouped.hpp"
#include "rackcode/repair_stacked.hpp"
#include "rackcode/serialize.hpp"

namespace rackcode {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<int> pick_sorted_subset(std::mt19937_64& rng, std::vector<int> items,
                                    std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + std::size_t(rng() % (items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(count);
  std::sort(items.begin(), items.end());
  return items;
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = int(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  out.push_back(c);
  while (next_combination(c, n)) out.push_back(c);
  return out;
}

std::string join_ints(const std::vector<int>& v, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string pattern_str(const FailurePattern& pat) {
  std::string s = "hosts=" + join_ints(pat.hosts) + " failed=";
  for (std::size_t i = 0; i < pat.hosts.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(pat.hosts[i]) + ":" + join_ints(pat.failed[i], '|');
  }
  s += " helpers=" + join_ints(pat.helpers);
  if (pat.extra_helper >= 0) s += " extra=" + std::to_string(pat.extra_helper);
  return s;
}

void write_trace(std::ofstream& out, int trial, const TraceSink& trace) {
  for (const TraceRecord& rec : trace.records) {
    json j;
    j["trial"] = trial;
    j["phase"] = rec.phase == Phase::download ? "download" : "cooperative";
    j["sender"] = rec.sender;
    j["receiver"] = rec.receiver;
    j["symbols"] = rec.symbols;
    out << j.dump() << "\n";
  }
}

json scheme_json(const SystemParams& p, Construction scheme) {
  BandwidthPrediction pred = predicted_bandwidth(p, scheme);
  json j;
  j["l"] = p.l;
  j["download"] = rational_json(pred.download);
  j["download_formula"] = p.b <= p.u - p.v
                              ? "dbar*h*l/den"
                              : "(dbar*h + hbar*(b-u+v))*l/den";
  j["cooperative"] = rational_json(pred.cooperative);
  j["cooperative_formula"] = "h*(hbar-delta)*l/den";
  j["den"] = scheme == Construction::stacked ? p.sbar + p.hbar - p.delta
                                             : p.hbar - p.delta + 2;
  j["total"] = rational_json(pred.total);
  j["matches_bound"] = pred.total == lower_bound(p);
  return j;
}

}  // namespace

Message random_message(const SystemParams& p, std::mt19937_64& rng, Symbol q) {
  Message msg(p.B);
  for (std::uint64_t i = 0; i < p.B; ++i) msg[i] = Symbol(rng() % q);
  return msg;
}

FailurePattern random_pattern(const SystemParams& p, std::mt19937_64& rng) {
  std::vector<int> all(p.nbar);
  for (int i = 0; i < p.nbar; ++i) all[i] = i;
  std::vector<int> hosts = pick_sorted_subset(rng, all, p.hbar);
  std::vector<int> rest;
  for (int rack : all)
    if (!std::binary_search(hosts.begin(), hosts.end(), rack)) rest.push_back(rack);
  std::vector<int> helpers = pick_sorted_subset(rng, rest, p.dbar);
  std::vector<int> locals(p.u);
  for (int g = 0; g < p.u; ++g) locals[g] = g;
  std::vector<std::vector<int>> failed;
  for (int i = 0; i < p.hbar; ++i) failed.push_back(pick_sorted_subset(rng, locals, p.b));
  return make_pattern(p, std::move(hosts), std::move(failed), std::move(helpers));
}

std::vector<FailurePattern> enumerate_patterns(const SystemParams& p, std::size_t cap,
                                               std::uint64_t* space_out) {
  const std::vector<std::vector<int>> host_sets = combinations(p.nbar, p.hbar);
  const std::vector<std::vector<int>> local_sets = combinations(p.u, p.b);
  std::uint64_t space = host_sets.size();
  for (int i = 0; i < p.hbar; ++i) space *= local_sets.size();
  if (space_out) *space_out = space;

  std::vector<FailurePattern> out;
  for (const std::vector<int>& hosts : host_sets) {
    std::vector<int> helpers;
    for (int rack = 0; rack < p.nbar && int(helpers.size()) < p.dbar; ++rack)
      if (!std::binary_search(hosts.begin(), hosts.end(), rack)) helpers.push_back(rack);
    std::vector<std::size_t> odo(p.hbar, 0);
    for (;;) {
      std::vector<std::vector<int>> failed;
      for (int i = 0; i < p.hbar; ++i) failed.push_back(local_sets[odo[i]]);
      out.push_back(make_pattern(p, hosts, std::move(failed), helpers));
      if (out.size() >= cap) return out;
      int pos = p.hbar - 1;
      while (pos >= 0 && ++odo[pos] == local_sets.size()) odo[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

json rational_json(const Rational& r) {
  json j;
  j["num"] = r.num;
  j["den"] = r.den;
  j["approx"] = r.approx();
  return j;
}

json params_json(const SystemParams& p, Symbol q) {
  json j;
  j["construction"] = construction_name(p.construction);
  j["n"] = p.n;
  j["u"] = p.u;
  j["k"] = p.k;
  j["h"] = p.h;
  j["hbar"] = p.hbar;
  j["delta"] = p.delta;
  j["dbar"] = p.dbar;
  j["nbar"] = p.nbar;
  j["kbar"] = p.kbar;
  j["v"] = p.v;
  j["r"] = p.r;
  j["rbar"] = p.rbar;
  j["b"] = p.b;
  j["sbar"] = p.sbar;
  j["d"] = p.d;
  j["l"] = p.l;
  j["B"] = p.B;
  j["q"] = q;
  return j;
}

json run_verify_mds(const Instance& inst, int trials, std::uint64_t seed,
                    const std::string& csv_path) {
  const SystemParams& p = inst.params;
  const Field& f = inst.field;
  auto start = Clock::now();
  std::mt19937_64 rng(seed);

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw ParameterError("cannot open for writing: " + csv_path);
    csv << "trial,erased,ok\n";
  }

  std::vector<int> all(p.n);
  for (int i = 0; i < p.n; ++i) all[i] = i;
  int passed = 0;
  for (int t = 0; t < trials; ++t) {
    Message msg = random_message(p, rng, f.q);
    std::vector<int> erased = pick_sorted_subset(rng, all, p.r);
    std::vector<int> known;
    for (int pos : all)
      if (!std::binary_search(erased.begin(), erased.end(), pos)) known.push_back(pos);

    bool ok = false;
    if (p.construction == Construction::stacked) {
      StackedCodeword cw = encode_stacked(p, f, msg);
      StackedCodeword damaged = cw;
      for (int pos : erased)
        for (FlatCodeword& inst_cw : damaged.instances)
          for (std::uint32_t a = 0; a < inst_cw.rows; ++a) inst_cw.at(pos, a) = 0;
      StackedCodeword rec = reconstruct(p, f, damaged, known);
      ok = true;
      for (int y = 0; y < p.instances() && ok; ++y)
        ok = rec.instances[y].data == cw.instances[y].data;
    } else {
      FlatCodeword cw = encode_flat(p, f, msg);
      FlatCodeword damaged = cw;
      for (int pos : erased)
        for (std::uint32_t a = 0; a < damaged.rows; ++a) damaged.at(pos, a) = 0;
      FlatCodeword rec = reconstruct(p, f, damaged, known);
      ok = rec.data == cw.data;
    }
    passed += ok ? 1 : 0;
    if (csv.is_open()) csv << t << "," << join_ints(erased, '|') << "," << (ok ? 1 : 0) << "\n";
  }

  json report;
  report["command"] = "verify-mds";
  report["params"] = params_json(p, f.q);
  report["scheme"] = construction_name(p.construction);
  report["trials"] = trials;
  report["failures"] = "random r=" + std::to_string(p.r) + "-subsets of nodes erased";
  report["passed"] = passed;
  report["failed"] = trials - passed;
  report["verdict"] = trials == 0 ? "no trials" : (passed == trials ? "pass" : "fail");
  report["rng"] = "mt19937_64";
  report["seed"] = seed;
  report["wall_time_s"] = seconds_since(start);
  return report;
}

json run_repair(const Instance& inst, const RepairOptions& opt) {
  const SystemParams& p = inst.params;
  const Field& f = inst.field;
  auto start = Clock::now();
  std::mt19937_64 rng(opt.seed);

  std::vector<FailurePattern> patterns;
  std::string failures_desc;
  std::uint64_t space = 0;
  switch (opt.mode) {
    case RepairOptions::Mode::explicit_pattern:
      patterns.push_back(*opt.pattern);
      failures_desc = "explicit pattern: " + pattern_str(patterns[0]);
      break;
    case RepairOptions::Mode::enumerate_all: {
      constexpr std::size_t kCap = 10000;
      patterns = enumerate_patterns(p, kCap, &space);
      failures_desc = "enumerated " + std::to_string(patterns.size()) + " of " +
                      std::to_string(space) + " patterns";
      break;
    }
    case RepairOptions::Mode::random: {
      for (int t = 0; t < opt.trials; ++t) patterns.push_back(random_pattern(p, rng));
      failures_desc = std::to_string(opt.trials) + " random pattern(s), b=" +
                      std::to_string(p.b) + " per host rack";
      break;
    }
  }

  std::mt19937_64 msg_rng(opt.seed + 1);

  std::ofstream trace_out;
  if (!opt.trace_path.empty()) {
    trace_out.open(opt.trace_path);
    if (!trace_out) throw ParameterError("cannot open for writing: " + opt.trace_path);
  }
  std::ofstream csv;
  if (!opt.csv_path.empty()) {
    csv.open(opt.csv_path);
    if (!csv) throw ParameterError("cannot open for writing: " + opt.csv_path);
    csv << "trial,scheme,pattern,achieved,download,cooperative,bound,ratio,restored\n";
  }

  const Rational bound = lower_bound(p);
  const BandwidthPrediction pred = predicted_bandwidth(p, p.construction);
  const Rational ratio = pred.total / bound;

  StackedCodeword stacked_cw;
  FlatCodeword flat_cw;
  if (p.construction == Construction::stacked) {
    stacked_cw = opt.stacked_in ? *opt.stacked_in
                                : encode_stacked(p, f, random_message(p, msg_rng, f.q));
  } else {
    flat_cw = opt.flat_in ? *opt.flat_in : encode_flat(p, f, random_message(p, msg_rng, f.q));
  }

  int repaired_ok = 0, bandwidth_ok = 0;
  std::string first_error;
  std::uint64_t achieved = 0, achieved_download = 0, achieved_coop = 0;
  for (std::size_t t = 0; t < patterns.size(); ++t) {
    const FailurePattern& pat = patterns[t];
    TraceSink trace;
    bool restored = false;
    BandwidthLedger ledger;
    try {
      if (p.construction == Construction::stacked) {
        StackedCodeword damaged = stacked_cw;
        for (std::size_t i = 0; i < pat.hosts.size(); ++i)
          for (int g : pat.failed[i])
            for (FlatCodeword& icw : damaged.instances)
              for (std::uint32_t a = 0; a < icw.rows; ++a)
                icw.at(pat.hosts[i] * p.u + g, a) = 0;
        StackedRepairResult res = repair(damaged, p, f, pat, &trace);
        ledger = std::move(res.ledger);
        restored = true;
        for (int y = 0; y < p.instances() && restored; ++y)
          restored = res.codeword.instances[y].data == stacked_cw.instances[y].data;
        restored = restored && parity_check(p, f, res.codeword);
      } else {
        FlatCodeword damaged = flat_cw;
        for (std::size_t i = 0; i < pat.hosts.size(); ++i)
          for (int g : pat.failed[i])
            for (std::uint32_t a = 0; a < damaged.rows; ++a)
              damaged.at(pat.hosts[i] * p.u + g, a) = 0;
        GroupedRepairResult res = repair_g(damaged, p, f, pat, &trace);
        ledger = std::move(res.ledger);
        restored = res.codeword.data == flat_cw.data && parity_check(p, f, res.codeword);
      }
    } catch (const std::exception& e) {
      if (first_error.empty()) first_error = e.what();
      if (csv.is_open())
        csv << t << "," << construction_name(p.construction) << "," << pattern_str(pat)
            << ",error,,,,,0\n";
      continue;
    }

    const std::uint64_t total = ledger.total();
    const bool bw_ok = Rational(std::int64_t(ledger.download_total())) == pred.download &&
                       Rational(std::int64_t(ledger.cooperative_total())) == pred.cooperative &&
                       trace.total() == total;
    repaired_ok += restored ? 1 : 0;
    bandwidth_ok += bw_ok ? 1 : 0;
    achieved = total;
    achieved_download = ledger.download_total();
    achieved_coop = ledger.cooperative_total();
    if (trace_out.is_open()) write_trace(trace_out, int(t), trace);
    if (csv.is_open()) {
      Rational tr_ratio = Rational(std::int64_t(total)) / bound;
      csv << t << "," << construction_name(p.construction) << "," << pattern_str(pat) << ","
          << total << "," << ledger.download_total() << "," << ledger.cooperative_total()
          << "," << bound.str() << "," << tr_ratio.str() << "," << (restored ? 1 : 0) << "\n";
    }
  }

  const int trials = int(patterns.size());
  const bool all_ok = repaired_ok == trials && bandwidth_ok == trials && first_error.empty();

  json report;
  report["command"] = "repair";
  report["params"] = params_json(p, f.q);
  report["scheme"] = construction_name(p.construction);
  report["trials"] = trials;
  report["failures"] = failures_desc;
  if (opt.mode == RepairOptions::Mode::enumerate_all) {
    report["enumeration_space"] = space;
    report["truncated"] = std::uint64_t(trials) < space;
  }
  report["achieved_symbols"] = achieved;
  report["achieved_download_symbols"] = achieved_download;
  report["achieved_cooperative_symbols"] = achieved_coop;
  report["predicted"] = scheme_json(p, p.construction);
  report["bound"] = rational_json(bound);
  report["bound_formula"] = "h*(dbar+hbar-delta)*l/(dbar-kbar+hbar-delta+1)";
  report["ratio"] = rational_json(ratio);
  report["optimality"] =
      ratio == Rational(1) ? "optimal" : (p.b > p.u - p.v ? "asymptotically optimal" : "");
  report["repaired_ok"] = repaired_ok;
  report["bandwidth_ok"] = bandwidth_ok;
  if (!first_error.empty()) report["error"] = first_error;
  report["verdict"] = trials == 0 ? "no trials" : (all_ok ? "pass" : "fail");
  report["rng"] = "mt19937_64";
  report["seed"] = opt.seed;
  report["wall_time_s"] = seconds_since(start);
  return report;
}

json run_bound(const Instance& inst) {
  const SystemParams& p = inst.params;
  json report;
  report["command"] = "bound";
  report["params"] = params_json(p, inst.field.q);
  report["bound"] = rational_json(lower_bound(p));
  report["bound_formula"] = "h*(dbar+hbar-delta)*l/(dbar-kbar+hbar-delta+1)";
  json schemes;
  for (Construction c : {Construction::stacked, Construction::grouped}) {
    try {
      SystemParams sp =
          validate(p.n, p.u, p.k, p.h, p.hbar, p.delta, p.dbar, c);
      json sj = scheme_json(sp, c);
      sj["bound"] = rational_json(lower_bound(sp));
      schemes[construction_name(c)] = sj;
    } catch (const ParameterError& e) {
      schemes[construction_name(c)] = json{{"not_applicable", e.what()}};
    }
  }
  report["schemes"] = schemes;
  return report;
}

}  // namespace rackcode
