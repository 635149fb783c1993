#include "bsfe/channel.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

bool measure(Qubit& q, bool basis, Rng& rng) {
  require(!q.consumed_, Errc::consumed, "qubit already measured");
  q.consumed_ = true;
  return basis == q.basis_ ? q.bit_ : rng.bit();
}

std::size_t QuantumMessage::append(const BitVector& bits, const BitVector& bases) {
  require(bits.size() == bases.size(), Errc::shape, "bits and bases differ in length");
  const std::size_t at = bits_.size();
  bits_.append(bits);
  bases_.append(bases);
  return at;
}

void QuantumMessage::add_bound_marker() {
  require(markers_.size() < max_markers_, Errc::state,
          "message already carries its declared " + std::to_string(max_markers_) + " bound marker(s)");
  markers_.push_back(bits_.size());
}

DecisionMask DecisionMask::measure_all(std::size_t n, const BitVector& basis) {
  return DecisionMask{BitVector::ones(n), BitVector(n), basis};
}

DecisionMask BasisStrategy::decide(std::size_t begin, std::size_t count, Rng&) {
  return DecisionMask::measure_all(count, basis_.slice(begin, count));
}

bool ReceiverOutcome::measure_stored(std::size_t i, bool basis, Rng& rng) {
  require(i < stored_.size() && stored_.get(i), Errc::consumed, "no stored qubit at this position");
  stored_.set(i, false);
  if (ledger_ != nullptr) ledger_->release(1);
  const bool v = basis == held_bases_.get(i) ? held_bits_.get(i) : rng.bit();
  held_bits_.set(i, false);
  held_bases_.set(i, false);
  return v;
}

bool apply_bound(Ledger& ledger, Transcript* transcript) {
  const bool ok = ledger.check("bound");
  emit(transcript, "bound_apply",
       {{"owner", ledger.owner()}, {"stored", ledger.current()}, {"budget", ledger.budget()}, {"ok", ok}});
  return ok;
}

ReceiverOutcome Channel::transmit(QuantumMessage msg, ReceiverStrategy& receiver, Ledger& ledger,
                                  Rng& rng) {
  const std::size_t n = msg.size();
  emit(transcript_, "qubit_send", {{"qubits", n}, {"markers", msg.markers_.size()}});

  BitVector meas, store, basis;
  std::size_t stored_total = 0;
  std::size_t begin = 0;
  auto run_segment = [&](std::size_t end) {
    if (end <= begin) return;
    const std::size_t count = end - begin;
    DecisionMask d = receiver.decide(begin, count, rng);
    require(d.measure.size() == count && d.store.size() == count && d.basis.size() == count,
            Errc::shape, "strategy returned decisions of the wrong length");
    require((d.measure & d.store).is_zero(), Errc::state, "a qubit cannot be both measured and stored");
    const std::size_t s = d.store.popcount();
    ledger.hold(s, "store");
    stored_total += s;
    meas.append(d.measure);
    store.append(d.store);
    basis.append(d.basis);
    begin = end;
  };
  for (std::size_t marker : msg.markers_) {
    run_segment(marker);
    apply_bound(ledger, transcript_);
  }
  run_segment(n);

  // Word-parallel measurement: a basis mismatch replaces the bit by noise.
  ReceiverOutcome out;
  out.measured_ = meas;
  out.basis_ = basis;
  out.stored_ = store;
  out.bits_ = BitVector(n);
  out.held_bits_ = msg.bits_ & store;
  out.held_bases_ = msg.bases_ & store;
  out.ledger_ = &ledger;
  auto res = out.bits_.mutable_words();
  const auto x = msg.bits_.words(), th = msg.bases_.words(), b = basis.words(), m = meas.words();
  for (std::size_t w = 0; w < res.size(); ++w) {
    const std::uint64_t mismatch = th[w] ^ b[w];
    res[w] = ((x[w] & ~mismatch) | (rng.next() & mismatch)) & m[w];
  }
  emit(transcript_, "measure",
       {{"measured", meas.popcount()}, {"stored", stored_total}, {"discarded", n - meas.popcount() - stored_total}});
  return out;
}

}  // namespace bsfe
