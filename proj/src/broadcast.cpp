#include "bsfe/broadcast.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

std::size_t broadcast_budget(std::size_t s, std::size_t m_out) {
  require(m_out > 0, Errc::parameter, "broadcast output must be nonempty");
  return s / (2 * m_out);
}

BroadcastHandle::BroadcastHandle(Program p, std::size_t s, std::uint64_t t_end, std::size_t symbol_bits,
                                 const BroadcastConfig& cfg, Transcript* t)
    : program_(std::move(p)), s_(s), t_end_(t_end), transcript_(t) {
  require(symbol_bits > 0 && program_.output_bits % symbol_bits == 0, Errc::shape,
          "output length is not a whole number of symbols");
  m_out_ = cfg.units == BroadcastUnits::symbols ? program_.output_bits / symbol_bits : program_.output_bits;
  budget_ = broadcast_budget(s, m_out_);
  if (program_.output_bits < cfg.negligible_bits)
    warnings_.push_back("output of " + std::to_string(program_.output_bits) +
                        " bits is below the negligibility threshold of " +
                        std::to_string(cfg.negligible_bits));
  emit(transcript_, "br_setup",
       {{"s", s_},
        {"t_end", t_end_},
        {"m_out", m_out_},
        {"units", cfg.units == BroadcastUnits::symbols ? "symbols" : "bits"},
        {"q", honest_charge()},
        {"k", budget_},
        {"r", bound_markers()},
        {"warnings", warnings_}});
}

BitVector BroadcastHandle::eval(const BitVector& x, Party party, Ledger* ledger) {
  if (party == Party::adversary) {
    require(open_, Errc::expired, "broadcast window has closed");
    require(adversary_evals_ < budget_, Errc::budget_exhausted,
            "adversary used all " + std::to_string(budget_) + " evaluations");
    ++adversary_evals_;
    emit(transcript_, "br_eval", {{"party", "adversary"}, {"n", adversary_evals_}});
    return program_(x);
  }
  // Honest recipients may evaluate after the close using the revealed key.
  if (ledger != nullptr) ledger->hold(honest_charge(), "broadcast eval");
  auto y = program_(x);
  ++honest_evals_;
  emit(transcript_, "br_eval",
       {{"party", "honest"}, {"charge", honest_charge()}, {"peak", ledger ? ledger->peak() : 0}});
  if (ledger != nullptr) ledger->release(honest_charge());
  return y;
}

void BroadcastHandle::tick(std::uint64_t now) {
  if (open_ && now >= t_end_) close();
}

void BroadcastHandle::close() {
  if (!open_) return;
  open_ = false;
  emit(transcript_, "br_close", {{"t_end", t_end_}, {"adversary_evals", adversary_evals_}});
}

BroadcastHandle br_setup(Program p, std::size_t s, std::uint64_t t_end, std::size_t symbol_bits,
                         const BroadcastConfig& cfg, Transcript* t) {
  return BroadcastHandle(std::move(p), s, t_end, symbol_bits, cfg, t);
}

BitVector br_eval(BroadcastHandle& h, const BitVector& x, Party party, Ledger* ledger) {
  return h.eval(x, party, ledger);
}

}  // namespace bsfe
