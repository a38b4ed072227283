#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "rackcode/codeword.hpp"
#include "rackcode/config.hpp"

namespace rackcode {

using json = nlohmann::ordered_json;

Message random_message(const SystemParams& p, std::mt19937_64& rng, Symbol q);

/// Random failure pattern: hbar host racks, b failed locals per host, dbar
/// helper racks from the rest, all uniform given the engine state.
FailurePattern random_pattern(const SystemParams& p, std::mt19937_64& rng);

/// All patterns with lexicographic host sets, per-host failed-node choices in
/// odometer order, helpers fixed to the lowest dbar non-host racks. Stops at
/// `cap` patterns; *space_out receives the full enumeration space size.
std::vector<FailurePattern> enumerate_patterns(const SystemParams& p, std::size_t cap,
                                               std::uint64_t* space_out);

json params_json(const SystemParams& p, Symbol q);
json rational_json(const Rational& r);

json run_verify_mds(const Instance& inst, int trials, std::uint64_t seed,
                    const std::string& csv_path = "");

struct RepairOptions {
  enum class Mode { explicit_pattern, enumerate_all, random };
  Mode mode = Mode::random;
  std::optional<FailurePattern> pattern;  // for explicit_pattern
  int trials = 1;                         // for random
  std::uint64_t seed = 0;
  std::string trace_path;  // JSONL transfer records, empty = off
  std::string csv_path;    // per-trial summary rows, empty = off
  // Repair this codeword instead of encoding a random message.
  std::optional<StackedCodeword> stacked_in;
  std::optional<FlatCodeword> flat_in;
};

json run_repair(const Instance& inst, const RepairOptions& opt);

json run_bound(const Instance& inst);

}  // namespace rackcode
