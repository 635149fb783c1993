#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bsfe/transcript.hpp"

namespace bsfe {

enum class Party { honest, adversary };

// Memory accounting for one party. Honest ledgers are checked on every
// allocation; adversary ledgers only at bound events, since the model lets
// adversaries hold anything between bounds.
class Ledger {
 public:
  Ledger(std::string owner, std::uint64_t budget, Party party, std::string unit = "qubits",
         Transcript* transcript = nullptr);

  void hold(std::uint64_t n, std::string_view where = "hold");
  void release(std::uint64_t n);
  // Replace the current amount (used by streaming folds that re-measure
  // their carried state).
  void set_current(std::uint64_t n, std::string_view where = "measure");

  // Bound event: returns false and records a violation if over budget.
  bool check(std::string_view where = "bound");

  std::uint64_t current() const { return current_; }
  std::uint64_t peak() const { return peak_; }
  std::uint64_t budget() const { return budget_; }
  std::uint64_t violations() const { return violations_; }
  bool ok() const { return violations_ == 0; }
  Party party() const { return party_; }
  const std::string& owner() const { return owner_; }
  const std::string& unit() const { return unit_; }

  // With enforcement off, overruns are allowed and not recorded. Used only
  // for deliberately parameter-violating contrast experiments.
  void set_enforced(bool on) { enforced_ = on; }
  bool enforced() const { return enforced_; }

 private:
  void record_violation(std::string_view where);

  std::string owner_;
  std::uint64_t budget_;
  Party party_;
  std::string unit_;
  Transcript* transcript_;
  std::uint64_t current_ = 0;
  std::uint64_t peak_ = 0;
  std::uint64_t violations_ = 0;
  bool enforced_ = true;
};

using MemoryLedger = Ledger;
using BitLedger = Ledger;

// Process-wide count of honest-party violations.
std::uint64_t honest_violation_total();
// Strict mode: an honest overrun throws Errc::ledger_violation after it is
// recorded, instead of letting the run finish.
void set_strict_honest_ledgers(bool on);
bool strict_honest_ledgers();

}  // namespace bsfe
