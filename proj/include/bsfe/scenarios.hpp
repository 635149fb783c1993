#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bsfe {

// Flat key=value configuration. Keys: s, r, n, lambda, l, w, trials, seed,
// backend, ledger-mode, circuit, out, strategy, m, u, enforce. Anything else
// is a usage error; each scenario also rejects keys it does not use.
class Config {
 public:
  void set(const std::string& key, const std::string& value);
  // Lines of key=value; '#' starts a comment.
  void load_text(const std::string& text);
  void load_file(const std::string& path);

  bool has(const std::string& key) const { return values_.contains(key); }
  std::string get(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
};

enum class ScenarioStatus { ok, ledger_violation, check_failed };

struct ScenarioOutput {
  std::string jsonl;
  std::string summary;
  std::uint64_t honest_violations = 0;
  ScenarioStatus status = ScenarioStatus::ok;
};

// run-ot, run-otp, run-bqs-fe, run-cbqs-fe, run-bcs-fe, run-wgb, and
// attack:<cbqs-ind|ot-sender|bcs-forget>. An attack without a strategy runs
// every registered one.
ScenarioOutput run_scenario(const std::string& name, const Config& cfg);
std::vector<std::string> scenario_names();

// Small versions of the end-to-end and statistical checks.
ScenarioOutput run_selftest();

}  // namespace bsfe
