#include "bsfe/otp.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

std::size_t OtpTransmission::classical_bits() const {
  std::size_t bits = classical_.gc.size_bits();
  for (const auto& a : classical_.wires)
    bits += a.theta.size() + a.f0.seed().size() + a.f1.seed().size() + a.e0.size() + a.e1.size();
  return bits;
}

ReceiverOutcome OtpTransmission::receive_qubits(ReceiverStrategy& receiver, Ledger& ledger, Rng& rng,
                                                Transcript* t) {
  require(qubits_.has_value() && !delivered_, Errc::consumed, "one-time program already received");
  delivered_ = true;
  Channel ch(t);
  auto out = ch.transmit(std::move(*qubits_), receiver, ledger, rng);
  qubits_.reset();
  return out;
}

const OtpClassical& OtpTransmission::classical() const {
  require(delivered_, Errc::state, "classical part is sent after the memory bound");
  return classical_;
}

OtpTransmission otp_yao_send(const BooleanCircuit& c, const OtpParams& params, Rng& rng, Transcript* t) {
  const OtParams ot{params.block_qubits(), params.label_bits, params.s, true};
  OtpTransmission tx;
  tx.n_inputs_ = c.n_inputs();
  tx.block_ = ot.m;
  // Steps 1-2: one BB84 block per input bit.
  QuantumMessage msg(1);
  std::vector<OtSender> senders;
  senders.reserve(c.n_inputs());
  for (std::size_t i = 0; i < c.n_inputs(); ++i) {
    senders.emplace_back(ot, rng);
    senders.back().prepare(msg);
  }
  // The single bound application.
  msg.add_bound_marker();
  tx.marker_count_ = msg.bound_markers().size();
  // Steps 3-4: garble, then mask both labels of each wire under its block.
  auto [gc, key] = gcircuit(c, rng, GarbleConfig{params.label_bits, params.tag_bits});
  tx.classical_.gc = std::move(gc);
  for (std::size_t i = 0; i < c.n_inputs(); ++i) {
    const auto l0 = ginput(key, i, false).bits(params.label_bits);
    const auto l1 = ginput(key, i, true).bits(params.label_bits);
    tx.classical_.wires.push_back(senders[i].announce(l0, l1));
  }
  tx.qubits_ = std::move(msg);
  emit(t, "otp_send",
       {{"inputs", c.n_inputs()},
        {"block_qubits", ot.m},
        {"qubits", tx.qubit_count()},
        {"markers", tx.marker_count_},
        {"garbled_tables", tx.classical_.gc.tables.size()},
        {"classical_bits", tx.classical_bits()}});
  return tx;
}

std::vector<WireLabel> otp_unmask_labels(const OtpClassical& cl, const BitVector& measured_bits,
                                         const BitVector& x, std::size_t block) {
  require(x.size() == cl.wires.size(), Errc::shape, "input length does not match the program");
  std::vector<WireLabel> labels;
  labels.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto bits = measured_bits.slice(i * block, block);
    labels.push_back(WireLabel::from_bits(ot_receive(x.get(i), bits, cl.wires[i])));
  }
  return labels;
}

OtpResult otp_yao_receive(OtpTransmission& t, const BitVector& x, Rng& rng, Transcript* log) {
  require(x.size() == t.n_inputs(), Errc::shape, "input length does not match the program");
  const std::size_t block = t.block_qubits();
  BitVector basis(t.qubit_count());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.get(i))
      for (std::size_t k = 0; k < block; ++k) basis.set(i * block + k, true);
  BasisStrategy honest(std::move(basis));
  Ledger ledger("otp-receiver", 0, Party::honest, "qubits", log);
  const auto outcome = t.receive_qubits(honest, ledger, rng, log);
  const auto& cl = t.classical();
  OtpResult r{geval(cl.gc, otp_unmask_labels(cl, outcome.bits(), x, block)), ledger.peak()};
  emit(log, "otp_eval", {{"inputs", x.size()}, {"output", r.output.to_string()}, {"peak", r.ledger_peak}});
  return r;
}

BitVector KilHandle::eval(const BitVector& x) {
  require(open_, Errc::expired, "one-time program window has closed");
  require(remaining_ > 0, Errc::budget_exhausted, "one-time program already evaluated");
  --remaining_;
  auto y = program_(x);
  emit(transcript_, "otp_eval", {{"backend", "kil"}, {"inputs", x.size()}});
  return y;
}

void KilHandle::close_window() { open_ = false; }

KilHandle kil_create(const BooleanCircuit& c, Transcript* t) { return KilHandle(Program::from_circuit(c), t); }
KilHandle kil_create(Program p, Transcript* t) { return KilHandle(std::move(p), t); }
BitVector kil_eval(KilHandle& h, const BitVector& x) { return h.eval(x); }

}  // namespace bsfe
