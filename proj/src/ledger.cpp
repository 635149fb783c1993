#include "bsfe/ledger.hpp"

#include <algorithm>
#include <atomic>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {
std::atomic<std::uint64_t> g_honest_violations{0};
std::atomic<bool> g_strict{false};
}

std::uint64_t honest_violation_total() { return g_honest_violations.load(); }
void set_strict_honest_ledgers(bool on) { g_strict.store(on); }
bool strict_honest_ledgers() { return g_strict.load(); }

Ledger::Ledger(std::string owner, std::uint64_t budget, Party party, std::string unit,
               Transcript* transcript)
    : owner_(std::move(owner)), budget_(budget), party_(party), unit_(std::move(unit)),
      transcript_(transcript) {}

void Ledger::hold(std::uint64_t n, std::string_view where) {
  current_ += n;
  peak_ = std::max(peak_, current_);
  if (party_ == Party::honest && current_ > budget_) record_violation(where);
}

void Ledger::release(std::uint64_t n) {
  require(n <= current_, Errc::internal, "ledger release exceeds holdings");
  current_ -= n;
}

void Ledger::set_current(std::uint64_t n, std::string_view where) {
  current_ = 0;
  hold(n, where);
}

bool Ledger::check(std::string_view where) {
  if (current_ <= budget_) return true;
  record_violation(where);
  return !enforced_;
}

void Ledger::record_violation(std::string_view where) {
  if (!enforced_) return;
  ++violations_;
  if (party_ == Party::honest) ++g_honest_violations;
  emit(transcript_, "ledger_violation",
       {{"owner", owner_},
        {"party", party_ == Party::honest ? "honest" : "adversary"},
        {"held", current_},
        {"budget", budget_},
        {"unit", unit_},
        {"at", std::string(where)}});
  if (party_ == Party::honest && g_strict.load())
    fail(Errc::ledger_violation, owner_ + " holds " + std::to_string(current_) + " " + unit_ + ", budget " +
                                     std::to_string(budget_));
}

}  // namespace bsfe
