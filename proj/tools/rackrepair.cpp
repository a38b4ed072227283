#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rackcode/experiments.hpp"
#include "rackcode/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitConfigError = 2;

int emit(const rackcode::json& report) {
  std::cout << report.dump(2) << std::endl;
  std::string verdict = report.value("verdict", "pass");
  return (verdict == "pass" || verdict == "no trials") ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rack-aware cooperative-repair code workbench"};
  app.require_subcommand(1);

  std::string config_path, pattern_path, trace_path, csv_path, in_path, out_path, scheme;
  int trials = 1;
  std::uint64_t seed = 0;
  bool seed_given = false, use_enumerate = false, use_random = false;

  CLI::App* verify = app.add_subcommand("verify-mds", "Encode/erase/reconstruct round-trips");
  verify->add_option("--config", config_path, "parameter file")->required();
  verify->add_option("--trials", trials, "number of trials")->default_val(200);
  verify->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });
  verify->add_option("--csv", csv_path, "per-trial CSV summary");

  CLI::App* rep = app.add_subcommand("repair", "Inject failures, repair, meter bandwidth");
  rep->add_option("--config", config_path, "parameter file")->required();
  rep->add_option("--scheme", scheme, "stacked|grouped (must match the config)");
  auto* popt = rep->add_option("--pattern", pattern_path, "explicit failure pattern file");
  auto* eopt = rep->add_flag("--enumerate", use_enumerate, "all patterns (capped at 10^4)");
  auto* ropt = rep->add_flag("--random", use_random, "random patterns (see --trials)");
  popt->excludes(eopt)->excludes(ropt);
  eopt->excludes(ropt);
  rep->add_option("--trials", trials, "random-pattern trials")->default_val(1);
  rep->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });
  rep->add_option("--trace", trace_path, "JSONL transfer trace");
  rep->add_option("--csv", csv_path, "per-trial CSV summary");
  rep->add_option("--in", in_path, "repair this stored codeword instead of a random one");

  CLI::App* bound = app.add_subcommand("bound", "Bandwidth lower bound and scheme predictions");
  bound->add_option("--config", config_path, "parameter file")->required();

  CLI::App* enc = app.add_subcommand("encode", "Encode a raw message file");
  enc->add_option("--config", config_path, "parameter file")->required();
  enc->add_option("--in", in_path, "message file (k*l little-endian u32 symbols)")->required();
  enc->add_option("--out", out_path, "output codeword file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    rackcode::RawConfig cfg = rackcode::parse_config_file(config_path);
    if (!seed_given) seed = cfg.seed;
    rackcode::Instance inst = rackcode::resolve_config(cfg);

    if (verify->parsed()) {
      return emit(rackcode::run_verify_mds(inst, trials, seed, csv_path));
    }

    if (rep->parsed()) {
      if (!scheme.empty() &&
          rackcode::construction_from_name(scheme) != inst.params.construction)
        throw rackcode::ParameterError("--scheme disagrees with the config's construction");
      rackcode::RepairOptions opt;
      if (!in_path.empty()) {
        rackcode::StoredCodeword sc = rackcode::read_codeword_file(in_path);
        if (sc.q != inst.field.q ||
            sc.params.construction != inst.params.construction || sc.params.n != inst.params.n ||
            sc.params.u != inst.params.u || sc.params.k != inst.params.k ||
            sc.params.h != inst.params.h || sc.params.hbar != inst.params.hbar ||
            sc.params.delta != inst.params.delta || sc.params.dbar != inst.params.dbar)
          throw rackcode::ParameterError("stored codeword parameters disagree with the config");
        if (sc.params.construction == rackcode::Construction::stacked)
          opt.stacked_in = std::move(sc.stacked);
        else
          opt.flat_in = std::move(sc.flat);
      }
      opt.seed = seed;
      opt.trials = trials;
      opt.trace_path = trace_path;
      opt.csv_path = csv_path;
      if (!pattern_path.empty()) {
        opt.mode = rackcode::RepairOptions::Mode::explicit_pattern;
        opt.pattern = rackcode::parse_pattern_file(inst.params, pattern_path);
      } else if (use_enumerate) {
        opt.mode = rackcode::RepairOptions::Mode::enumerate_all;
      } else {
        opt.mode = rackcode::RepairOptions::Mode::random;
      }
      return emit(rackcode::run_repair(inst, opt));
    }

    if (bound->parsed()) {
      std::cout << rackcode::run_bound(inst).dump(2) << std::endl;
      return kExitOk;
    }

    if (enc->parsed()) {
      rackcode::Message msg =
          rackcode::read_message_file(in_path, inst.params, inst.field.q);
      if (inst.params.construction == rackcode::Construction::stacked) {
        rackcode::StackedCodeword cw = rackcode::encode_stacked(inst.params, inst.field, msg);
        rackcode::write_codeword_file(out_path, inst.params, inst.field.q, cw);
      } else {
        rackcode::FlatCodeword cw = rackcode::encode_flat(inst.params, inst.field, msg);
        rackcode::write_codeword_file(out_path, inst.params, inst.field.q, cw);
      }
      rackcode::json report;
      report["command"] = "encode";
      report["params"] = rackcode::params_json(inst.params, inst.field.q);
      report["out"] = out_path;
      report["verdict"] = "pass";
      std::cout << report.dump(2) << std::endl;
      return kExitOk;
    }
  } catch (const rackcode::ParameterError& e) {
    std::cerr << "configuration error: " << e.what() << std::endl;
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitVerificationFailed;
  }
  return kExitConfigError;
}
