#include "bsfe/ot.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

std::size_t ot_min_qubits(std::size_t ell, std::size_t s) { return 16 * ell + 8 * s; }

bool ot_params_secure(const OtParams& p) { return p.m >= ot_min_qubits(p.ell, p.s); }

OtParams ot_params_for(std::size_t ell, std::size_t s) {
  return OtParams{ot_min_qubits(ell, s), ell, s, true};
}

OtSender::OtSender(const OtParams& params, Rng& rng) : params_(params), rng_(rng) {
  if (params.enforce)
    require(ot_params_secure(params), Errc::insecure_parameters,
            "m/4 - 2l - s = " + std::to_string(static_cast<double>(params.m) / 4 - 2.0 * params.ell -
                                               static_cast<double>(params.s)) +
                " is below m/8 = " + std::to_string(static_cast<double>(params.m) / 8));
}

std::size_t OtSender::prepare(QuantumMessage& msg) {
  require(!prepared_, Errc::state, "OT sender already sent its qubits");
  prepared_ = true;
  x_ = BitVector::random(params_.m, rng_);
  theta_ = BitVector::random(params_.m, rng_);
  return msg.append(x_, theta_);
}

OtAnnouncement OtSender::announce(const BitVector& s0, const BitVector& s1, Transcript* t) {
  require(prepared_, Errc::state, "announce before the qubits were sent");
  require(s0.size() == params_.ell && s1.size() == params_.ell, Errc::shape,
          "OT strings must have ell bits");
  const BitVector i1 = theta_;
  const BitVector i0 = ~theta_;
  auto f0 = ToeplitzHash::random(i0.popcount(), params_.ell, rng_);
  auto f1 = ToeplitzHash::random(i1.popcount(), params_.ell, rng_);
  BitVector e0 = f0(x_.compress(i0)) ^ s0;
  BitVector e1 = f1(x_.compress(i1)) ^ s1;
  if (t)
    t->emit("ot_announce",
       {{"theta", theta_.to_hex()},
        {"f0", f0.seed().to_hex()},
        {"f1", f1.seed().to_hex()},
        {"e0", e0.to_hex()},
        {"e1", e1.to_hex()}});
  return OtAnnouncement{theta_, std::move(f0), std::move(f1), std::move(e0), std::move(e1)};
}

BitVector ot_receive(bool c, const BitVector& measured_bits, const OtAnnouncement& ann) {
  require(measured_bits.size() == ann.theta.size(), Errc::shape, "measured block has wrong length");
  const auto& f = c ? ann.f1 : ann.f0;
  const auto& e = c ? ann.e1 : ann.e0;
  return f(measured_bits.compress(ann.mask(c))) ^ e;
}

OtRun run_ot(const OtParams& params, const BitVector& s0, const BitVector& s1, bool c,
             Rng& sender_rng, Rng& receiver_rng, Transcript* sender_log, Transcript* receiver_log) {
  OtSender sender(params, sender_rng);
  QuantumMessage msg(1);
  sender.prepare(msg);
  msg.add_bound_marker();

  Ledger ledger("ot-receiver", 0, Party::honest, "qubits", receiver_log);
  BasisStrategy honest(c ? BitVector::ones(params.m) : BitVector(params.m));
  Channel channel(receiver_log);
  emit(sender_log, "qubit_send", {{"qubits", msg.size()}, {"markers", msg.bound_markers().size()}});
  const auto outcome = channel.transmit(std::move(msg), honest, ledger, receiver_rng);
  const auto ann = sender.announce(s0, s1, sender_log);
  OtRun run{ot_receive(c, outcome.bits(), ann), ledger.peak()};
  emit(receiver_log, "ot_output", {{"c", c}, {"y", run.y.to_hex()}});
  return run;
}

}  // namespace bsfe
