#include "bsfe/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "bsfe/bcs_fe.hpp"
#include "bsfe/bqs_fe.hpp"
#include "bsfe/cbqs_fe.hpp"
#include "bsfe/error.hpp"
#include "bsfe/fixtures.hpp"
#include "bsfe/harness.hpp"
#include "bsfe/ot.hpp"
#include "bsfe/otp.hpp"

namespace bsfe {

// ---- config -------------------------------------------------------------

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys{"s",       "r",           "n",       "lambda", "l",   "w",
                                             "trials",  "seed",        "backend", "ledger-mode",
                                             "circuit", "out",         "strategy", "m",     "u",   "enforce"};
  return keys;
}

namespace {

const std::set<std::string> kTextKeys{"backend", "ledger-mode", "circuit", "out", "strategy"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(Errc::usage, "unknown config key '" + key + "'");
  if (!kTextKeys.contains(key)) {
    std::int64_t v = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end || v < 0)
      fail(Errc::usage, "config key '" + key + "' needs a non-negative integer, got '" + value + "'");
  }
  if (key == "backend" && value != "kil" && value != "yao") fail(Errc::usage, "backend must be kil or yao");
  if (key == "ledger-mode" && value != "record" && value != "strict")
    fail(Errc::usage, "ledger-mode must be record or strict");
  values_[key] = value;
}

void Config::load_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(Errc::usage, "config line " + std::to_string(lineno) + ": expected key=value");
    set(trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)));
  }
}

void Config::load_file(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), Errc::io, "cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  load_text(ss.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : std::stoll(it->second);
}

// ---- scenarios ----------------------------------------------------------

namespace {

struct StrictGuard {
  bool previous;
  explicit StrictGuard(bool on) : previous(strict_honest_ledgers()) { set_strict_honest_ledgers(on); }
  ~StrictGuard() { set_strict_honest_ledgers(previous); }
};

void only(const Config& cfg, const std::string& scenario, std::initializer_list<const char*> keys) {
  std::set<std::string> ok{"trials", "seed", "ledger-mode", "out"};
  ok.insert(keys.begin(), keys.end());
  for (const auto& [k, v] : cfg.values())
    if (!ok.contains(k)) fail(Errc::usage, "key '" + k + "' does not apply to " + scenario);
}

std::size_t size_of(const Config& cfg, const std::string& key, std::size_t fallback) {
  return static_cast<std::size_t>(cfg.get_int(key, static_cast<std::int64_t>(fallback)));
}

BooleanCircuit circuit_of(const Config& cfg, const std::string& fallback) {
  const auto name = cfg.get("circuit", fallback);
  if (std::filesystem::is_regular_file(name)) return load_circuit_file(name);
  const auto names = fixture_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    fail(Errc::usage, "circuit '" + name + "' is neither a file nor a built-in fixture");
  return fixture(name);
}

void check_w(const Config& cfg, std::size_t w) {
  if (cfg.has("w") && size_of(cfg, "w", 0) != w)
    fail(Errc::parameter, "w = " + cfg.get("w", "") + " but the class encoding has " + std::to_string(w) + " bits");
}

BitVector expected(const BooleanCircuit& c, const BitVector& x) { return eval_circuit(c, x.slice(0, c.n_inputs())); }

struct Tally {
  std::uint64_t trials = 0;
  std::uint64_t correct = 0;
  nlohmann::json extra = nlohmann::json::object();
};

using Runner = std::function<Tally(const Config&, std::uint64_t seed, std::uint64_t trials, Transcript&)>;

Tally scenario_ot(const Config& cfg, std::uint64_t seed, std::uint64_t trials, Transcript& t) {
  only(cfg, "run-ot", {"l", "s"});
  const auto p = ot_params_for(size_of(cfg, "l", 8), size_of(cfg, "s", 32));
  Tally r{trials};
  std::uint64_t peak = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng setup = Rng::derive(seed, Stream::setup, i);
    const auto s0 = BitVector::random(p.ell, setup), s1 = BitVector::random(p.ell, setup);
    const bool c = setup.bit();
    Rng srng = Rng::derive(seed, Stream::sender, i), rrng = Rng::derive(seed, Stream::receiver, i);
    const auto run = run_ot(p, s0, s1, c, srng, rrng, &t, &t);
    r.correct += run.y == (c ? s1 : s0);
    peak = std::max(peak, run.receiver_peak);
  }
  r.extra = {{"l", p.ell}, {"s", p.s}, {"m", p.m}, {"receiver_peak", peak}};
  return r;
}

Tally scenario_otp(const Config& cfg, std::uint64_t seed, std::uint64_t trials, Transcript& t) {
  only(cfg, "run-otp", {"circuit", "l", "s"});
  const auto c = circuit_of(cfg, "adder2");
  const OtpParams p{size_of(cfg, "s", 32), size_of(cfg, "l", 8), 32};
  Tally r{trials};
  std::uint64_t peak = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng srng = Rng::derive(seed, Stream::sender, i), rrng = Rng::derive(seed, Stream::receiver, i);
    const auto x = BitVector::random(c.n_inputs(), rrng);
    auto tx = otp_yao_send(c, p, srng, &t);
    const auto out = otp_yao_receive(tx, x, rrng, &t);
    r.correct += out.output == eval_circuit(c, x);
    peak = std::max(peak, out.ledger_peak);
  }
  r.extra = {{"s", p.s}, {"l", p.label_bits}, {"block_qubits", p.block_qubits()}, {"receiver_peak", peak}};
  return r;
}

Tally scenario_bqs(const Config& cfg, std::uint64_t seed, std::uint64_t trials, Transcript& t) {
  only(cfg, "run-bqs-fe", {"circuit", "s", "r", "lambda", "l", "w", "backend"});
  const auto c = circuit_of(cfg, "and2");
  BqsFeParams p;
  p.s = size_of(cfg, "s", 32);
  p.r = size_of(cfg, "r", 2);
  p.lambda = size_of(cfg, "lambda", 8);
  p.ell = static_cast<unsigned>(size_of(cfg, "l", 0));
  p.cls = TruthTableClass{std::max<std::size_t>(c.n_inputs(), 1), c.n_outputs()};
  p.backend = cfg.get("backend", "kil") == "yao" ? FeBackend::yao : FeBackend::kil;
  check_w(cfg, p.cls.w());
  Tally r{trials};
  std::uint64_t peak = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng mr = Rng::derive(seed, Stream::challenger, i);
    const auto mu = BitVector::random(p.cls.n_inputs, mr);
    const auto run = bqsfe_run(p, c, mu, splitmix64(seed ^ i), &t);
    r.correct += run.output.has_value() && *run.output == expected(c, mu);
    peak = std::max({peak, run.pk_peak, run.mk_peak});
  }
  r.extra = {{"s", p.s}, {"r", p.r}, {"m", p.m()}, {"w", p.cls.w()}, {"ell", p.field_degree()},
             {"honest_peak", peak}, {"memory_figure", 24.0 * std::sqrt(double(p.s) / double(p.r))}};
  return r;
}

Tally scenario_cbqs(const Config& cfg, std::uint64_t seed, std::uint64_t trials, Transcript& t) {
  only(cfg, "run-cbqs-fe", {"circuit", "s", "l", "w"});
  const auto c = circuit_of(cfg, "and2");
  CbqsParams p;
  p.s = size_of(cfg, "s", 16);
  p.otp.s = p.s;
  p.otp.label_bits = size_of(cfg, "l", 8);
  check_w(cfg, p.cls.w());
  Rng setup = Rng::derive(seed, Stream::setup, 0);
  auto keys = cbqsfe_setup(p, setup, &t);
  const auto sk = cbqsfe_keygen(keys, p, c);
  Tally r{trials};
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng mr = Rng::derive(seed, Stream::challenger, i);
    Rng snd = Rng::derive(seed, Stream::sender, i), rcv = Rng::derive(seed, Stream::receiver, i);
    const auto mu = BitVector::random(p.cls.n_inputs, mr);
    auto ct = cbqsfe_enc(keys.pk(), mu, p, snd, &t);
    const auto y = cbqsfe_dec(sk, ct, p, rcv, &t);
    r.correct += y.has_value() && *y == expected(c, mu);
  }
  r.extra = {{"s", p.s}, {"l", p.otp.label_bits}, {"w", p.cls.w()}, {"input_bits", p.input_bits()}};
  return r;
}

BcsParams bcs_params(const Config& cfg, const BooleanCircuit& c) {
  BcsParams p;
  p.n = size_of(cfg, "n", 64);
  p.lambda = size_of(cfg, "lambda", 32);
  p.cls = TruthTableClass{std::max<std::size_t>(c.n_inputs(), 1), c.n_outputs()};
  p.validate();
  return p;
}

Tally scenario_bcs(const Config& cfg, std::uint64_t seed, std::uint64_t trials, Transcript& t) {
  only(cfg, "run-bcs-fe", {"circuit", "n", "lambda", "w"});
  const auto c = circuit_of(cfg, "and2");
  const auto p = bcs_params(cfg, c);
  check_w(cfg, p.cls.w());
  Tally r{trials};
  std::uint64_t identity_ok = 0, dist_peak = 0, ek_peak = 0, fk_peak = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::derive(seed, Stream::setup, i);
    Ledger dist("distributor", p.distributor_memory(), Party::honest, "bits", &t);
    auto keys = bcsfe_keygen(p, rng, &dist, &t);
    BitStream for_ek = keys.mk, for_fk = keys.mk;
    Ledger le("encryptor", p.ek_memory(), Party::honest, "bits", &t);
    Rng erng = Rng::derive(seed, Stream::sender, i);
    const auto k = bcsfe_ek_receive(for_ek, p, erng, le, &t);
    const auto code = bcs_circuit_code(c, p);
    Ledger lf("decryptor", p.fk_memory(), Party::honest, "bits", &t);
    const auto sk_c = bcsfe_fk_receive(for_fk, code, p, lf, &t);
    Rng mr = Rng::derive(seed, Stream::challenger, i);
    const auto mu = BitVector::random(p.cls.n_inputs, mr);
    auto ct = bcsfe_enc(k, mu, p, &t);
    const auto out = bcsfe_dec({{sk_c, code}, {keys.sk, bcs_identity_code(p)}}, ct, p, &t);
    r.correct += out[0].has_value() && *out[0] == expected(c, mu);
    identity_ok += out[1].has_value() && *out[1] == mu;
    dist_peak = std::max(dist_peak, dist.peak());
    ek_peak = std::max(ek_peak, le.peak());
    fk_peak = std::max(fk_peak, lf.peak());
  }
  // Both branches must hold for the run to count as correct.
  r.correct = std::min(r.correct, identity_ok);
  r.extra = {{"n", p.n},           {"lambda", p.lambda},   {"w", p.cls.w()},       {"stream_bits", p.stream_bits()},
             {"identity_ok", identity_ok}, {"distributor_peak", dist_peak}, {"ek_peak", ek_peak},
             {"fk_peak", fk_peak}};
  return r;
}

Tally scenario_wgb(const Config& cfg, std::uint64_t seed, std::uint64_t trials, Transcript& t) {
  only(cfg, "run-wgb", {"circuit", "n", "lambda"});
  const auto c = circuit_of(cfg, "and2");
  const auto p = bcs_params(cfg, c);
  const std::size_t bits = p.cls.n_inputs;
  require(bits <= 16, Errc::parameter, "run-wgb evaluates every input and supports at most 16 input bits");
  Tally r{trials};
  std::uint64_t points = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::derive(seed, Stream::setup, i);
    auto obf = wgb_from_fe_obfuscate(c, p, rng, &t);
    std::vector<BitVector> xs;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << bits); ++x) xs.push_back(BitVector::from_word(x, bits));
    const auto ys = wgb_from_fe_eval(obf, xs, &t);
    bool all = true;
    for (std::size_t j = 0; j < xs.size(); ++j) all = all && ys[j] == expected(c, xs[j]);
    r.correct += all;
    points += xs.size();
  }
  r.extra = {{"n", p.n}, {"lambda", p.lambda}, {"inputs_per_trial", std::uint64_t{1} << bits}, {"points", points}};
  return r;
}

const std::map<std::string, std::pair<Runner, std::uint64_t>>& runners() {
  static const std::map<std::string, std::pair<Runner, std::uint64_t>> m{
      {"run-ot", {scenario_ot, 10}},       {"run-otp", {scenario_otp, 4}},
      {"run-bqs-fe", {scenario_bqs, 4}},   {"run-cbqs-fe", {scenario_cbqs, 2}},
      {"run-bcs-fe", {scenario_bcs, 2}},   {"run-wgb", {scenario_wgb, 1}},
  };
  return m;
}

std::string fmt_summary(const std::string& name, const Tally& r, std::uint64_t honest) {
  std::ostringstream os;
  os << name << ": " << r.correct << "/" << r.trials << " correct, honest ledger violations " << honest << "\n";
  for (const auto& [k, v] : r.extra.items()) os << "  " << k << " = " << v.dump() << "\n";
  return os.str();
}

ScenarioOutput run_attack(const std::string& target, const Config& cfg, Transcript& t) {
  ExperimentSpec spec;
  spec.scenario = target;
  spec.trials = static_cast<std::uint64_t>(cfg.get_int("trials", 1000));
  spec.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  std::vector<std::string> ids;
  if (target == "cbqs-ind") {
    only(cfg, "attack cbqs-ind", {"strategy", "s", "l"});
    ids = ind_strategy_ids();
  } else if (target == "ot-sender") {
    only(cfg, "attack ot-sender", {"strategy", "s", "l", "m", "enforce"});
    ids = ot_attack_ids();
  } else if (target == "bcs-forget") {
    only(cfg, "attack bcs-forget", {"strategy", "n", "u"});
    ids = forget_attack_ids();
  } else {
    fail(Errc::usage, "unknown attack scenario '" + target + "'");
  }
  for (const auto& [k, v] : cfg.values())
    if (k != "strategy" && k != "trials" && k != "seed" && k != "ledger-mode" && k != "out")
      spec.params[k] = std::stoll(v);
  if (cfg.has("strategy")) ids = {cfg.get("strategy", "")};
  std::vector<ExperimentResult> results;
  ScenarioOutput out;
  for (const auto& id : ids) {
    spec.strategy = id;
    results.push_back(run_experiment(spec, &t));
    t.emit("result", results.back().to_json());
    out.honest_violations += results.back().honest_violations;
  }
  out.summary = summary_table(results);
  return out;
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : runners()) names.push_back(k);
  for (const char* a : {"attack:cbqs-ind", "attack:ot-sender", "attack:bcs-forget"}) names.emplace_back(a);
  return names;
}

ScenarioOutput run_scenario(const std::string& name, const Config& cfg) {
  StrictGuard strict(cfg.get("ledger-mode", "record") == "strict");
  require(cfg.get_int("trials", 1) >= 1, Errc::usage, "trials must be at least 1");
  Transcript t;
  const auto before = honest_violation_total();
  ScenarioOutput out;
  if (name.starts_with("attack:")) {
    out = run_attack(name.substr(7), cfg, t);
  } else {
    auto it = runners().find(name);
    if (it == runners().end()) fail(Errc::usage, "unknown scenario '" + name + "'");
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    const auto trials = static_cast<std::uint64_t>(cfg.get_int("trials", static_cast<std::int64_t>(it->second.second)));
    const auto tally = it->second.first(cfg, seed, trials, t);
    const auto honest = honest_violation_total() - before;
    auto rec = tally.extra;
    rec["scenario"] = name;
    rec["seed"] = seed;
    rec["trials"] = tally.trials;
    rec["correct"] = tally.correct;
    rec["honest_violations"] = honest;
    t.emit("result", rec);
    out.summary = fmt_summary(name, tally, honest);
    if (tally.correct != tally.trials) out.status = ScenarioStatus::check_failed;
  }
  out.honest_violations = std::max(out.honest_violations, honest_violation_total() - before);
  if (out.honest_violations > 0) out.status = ScenarioStatus::ledger_violation;
  out.jsonl = t.text();
  return out;
}

ScenarioOutput run_selftest() {
  ScenarioOutput out;
  std::ostringstream os;
  bool all = true;
  auto check = [&](const std::string& what, const std::function<bool()>& f) {
    bool ok = false;
    std::string why;
    try {
      ok = f();
    } catch (const std::exception& e) {
      why = std::string(" (") + e.what() + ")";
    }
    all = all && ok;
    os << (ok ? "PASS " : "FAIL ") << what << why << "\n";
  };
  const auto before = honest_violation_total();
  for (const auto& [name, runner] : runners()) {
    check(name + " end to end", [&, name = name] {
      Config cfg;
      const auto a = run_scenario(name, cfg);
      const auto b = run_scenario(name, cfg);
      return a.status == ScenarioStatus::ok && a.jsonl == b.jsonl;
    });
  }
  check("ot sender bound (fixed-basis, 4000 trials)", [] {
    auto r = run_experiment({"ot-sender", "fixed-basis", 4000, 3, {}});
    return r.ci.lo <= 2.0 / 256.0;
  });
  check("ind disqualification (20 games)", [] {
    return run_experiment({"cbqs-ind", "disqualified", 20, 3, {}}).successes == 0;
  });
  check("forgetting prefix vs full (n=64, 20 trials)", [] {
    return run_experiment({"bcs-forget", "prefix", 20, 3, {}}).successes == 0 &&
           run_experiment({"bcs-forget", "full", 20, 3, {}}).successes == 20;
  });
  out.honest_violations = honest_violation_total() - before;
  check("no honest ledger violations", [&] { return out.honest_violations == 0; });
  out.summary = os.str();
  out.status = all ? ScenarioStatus::ok : ScenarioStatus::check_failed;
  Transcript t;
  t.emit("selftest", {{"ok", all}, {"honest_violations", out.honest_violations}});
  out.jsonl = t.text();
  return out;
}

}  // namespace bsfe
