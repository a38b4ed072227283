#include "rackcode/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace rackcode {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ParameterError("line " + std::to_string(lineno) + ": empty key or value");
    if (kv.count(key)) throw ParameterError("duplicate key '" + key + "'");
    kv[key] = val;
  }
  return kv;
}

long long to_int(const std::string& key, const std::string& val) {
  try {
    std::size_t used = 0;
    long long x = std::stoll(val, &used);
    if (used != val.size()) throw std::invalid_argument(val);
    return x;
  } catch (const std::exception&) {
    throw ParameterError("key '" + key + "': not an integer: '" + val + "'");
  }
}

std::vector<int> to_int_list(const std::string& key, const std::string& val) {
  std::vector<int> out;
  std::istringstream in(val);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(int(to_int(key, trim(item))));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RawConfig parse_config_text(const std::string& text) {
  auto kv = parse_kv(text);
  RawConfig cfg;
  auto take_int = [&kv](const std::string& key, int& into) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParameterError("missing config key '" + key + "'");
    into = int(to_int(key, it->second));
    kv.erase(it);
  };
  take_int("n", cfg.n);
  take_int("u", cfg.u);
  take_int("k", cfg.k);
  take_int("h", cfg.h);
  take_int("hbar", cfg.hbar);
  take_int("delta", cfg.delta);
  take_int("dbar", cfg.dbar);
  auto it = kv.find("construction");
  if (it == kv.end()) throw ParameterError("missing config key 'construction'");
  cfg.construction = it->second;
  kv.erase(it);
  if ((it = kv.find("q")) != kv.end()) {
    cfg.q = Symbol(to_int("q", it->second));
    kv.erase(it);
  }
  if ((it = kv.find("seed")) != kv.end()) {
    cfg.seed = std::uint64_t(to_int("seed", it->second));
    kv.erase(it);
  }
  if (!kv.empty()) throw ParameterError("unknown config key '" + kv.begin()->first + "'");
  return cfg;
}

RawConfig parse_config_file(const std::string& path) {
  return parse_config_text(read_file(path));
}

Instance resolve_config(const RawConfig& cfg) {
  Construction c = construction_from_name(cfg.construction);
  Instance inst;
  inst.params = validate(cfg.n, cfg.u, cfg.k, cfg.h, cfg.hbar, cfg.delta, cfg.dbar, c);
  Symbol q = cfg.q ? *cfg.q : smallest_valid_prime(cfg.n, inst.params.sbar, cfg.u, c);
  inst.field = make_field(q, cfg.u);
  std::uint64_t floor = (c == Construction::grouped) ? 2ull * cfg.n
                                                     : std::uint64_t(cfg.n) * inst.params.sbar;
  if (q - 1 < floor)
    throw ParameterError("field size q=" + std::to_string(q) + " too small: needs q-1 >= " +
                         std::to_string(floor) + " to keep the evaluation points distinct");
  if (!eval_points_distinct(inst.field, inst.params.nbar, inst.params.sbar))
    throw ParameterError("evaluation points collide for q=" + std::to_string(q));
  return inst;
}

FailurePattern parse_pattern_text(const SystemParams& p, const std::string& text) {
  auto kv = parse_kv(text);
  auto it = kv.find("hosts");
  if (it == kv.end()) throw ParameterError("pattern is missing 'hosts'");
  std::vector<int> hosts = to_int_list("hosts", it->second);
  kv.erase(it);
  it = kv.find("helpers");
  if (it == kv.end()) throw ParameterError("pattern is missing 'helpers'");
  std::vector<int> helpers = to_int_list("helpers", it->second);
  kv.erase(it);

  std::vector<std::vector<int>> failed(hosts.size());
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    std::string key = "failed." + std::to_string(hosts[i]);
    it = kv.find(key);
    if (it == kv.end()) throw ParameterError("pattern is missing '" + key + "'");
    failed[i] = to_int_list(key, it->second);
    kv.erase(it);
  }
  if (!kv.empty()) throw ParameterError("unknown pattern key '" + kv.begin()->first + "'");
  return make_pattern(p, std::move(hosts), std::move(failed), std::move(helpers));
}

FailurePattern parse_pattern_file(const SystemParams& p, const std::string& path) {
  return parse_pattern_text(p, read_file(path));
}

}  // namespace rackcode
