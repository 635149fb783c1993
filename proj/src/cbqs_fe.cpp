#include "bsfe/cbqs_fe.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

bool GateListClass::contains(const BooleanCircuit& c) const {
  return c.n_inputs() <= n_inputs && c.n_gates() <= max_gates && c.n_outputs() == n_outputs;
}

BitVector GateListClass::encode(const BooleanCircuit& c) const {
  require(contains(c), Errc::class_bound,
          "circuit (" + std::to_string(c.n_inputs()) + " inputs, " + std::to_string(c.n_gates()) + " gates, " +
              std::to_string(c.n_outputs()) + " outputs) is outside the class");
  const auto wide = c.with_input_count(n_inputs);
  auto gates = wide.gates();
  while (gates.size() < max_gates) gates.push_back(Gate{GateOp::Const0, 0, 0});
  return encode_circuit(BooleanCircuit(n_inputs, std::move(gates), wide.outputs()), w());
}

namespace {

// Wire selected by a 16-bit reference among `wires`; references past the
// end select 0.
Wire select_wire(CircuitBuilder& b, const std::vector<Wire>& ref, const std::vector<Wire>& wires) {
  std::size_t low = 0;
  while ((std::size_t{1} << low) < wires.size()) ++low;
  const std::vector<Wire> high(ref.begin() + static_cast<std::ptrdiff_t>(low), ref.end());
  const Wire in_range = b.not_(b.or_all(high));
  std::vector<Wire> picks;
  for (std::size_t j = 0; j < wires.size(); ++j) {
    std::vector<Wire> eq{in_range};
    for (std::size_t k = 0; k < low; ++k) eq.push_back(((j >> k) & 1U) ? ref[k] : b.not_(ref[k]));
    picks.push_back(b.and_(b.and_all(eq), wires[j]));
  }
  return b.or_all(picks);
}

}  // namespace

std::vector<Wire> build_universal_eval(CircuitBuilder& b, const GateListClass& cls, const BitVector& mu,
                                       const std::vector<Wire>& enc) {
  require(enc.size() == cls.w(), Errc::shape, "encoding wires have the wrong width");
  require(mu.size() == cls.n_inputs, Errc::shape, "message length must equal the class input count");
  std::vector<Wire> wires;
  for (std::size_t i = 0; i < mu.size(); ++i) wires.push_back(b.constant(mu.get(i)));
  auto field = [&](std::size_t pos, std::size_t len) {
    return std::vector<Wire>(enc.begin() + static_cast<std::ptrdiff_t>(pos),
                             enc.begin() + static_cast<std::ptrdiff_t>(pos + len));
  };
  // The header is fixed for the class; the signature covers it, so the
  // evaluator does not need to read it.
  std::size_t pos = kEncHeaderBits;
  for (std::size_t k = 0; k < cls.max_gates; ++k, pos += kEncGateBits) {
    const auto op = field(pos, 3);
    const Wire a = select_wire(b, field(pos + 3, kEncRefBits), wires);
    const Wire c = select_wire(b, field(pos + 3 + kEncRefBits, kEncRefBits), wires);
    const Wire n0 = b.not_(op[0]), n1 = b.not_(op[1]), n2 = b.not_(op[2]);
    const Wire is_and = b.and_(b.and_(n0, n1), n2);
    const Wire is_xor = b.and_(b.and_(op[0], n1), n2);
    const Wire is_not = b.and_(b.and_(n0, op[1]), n2);
    const Wire is_one = b.and_(b.and_(n0, n1), op[2]);
    const std::vector<Wire> terms{b.and_(is_and, b.and_(a, c)), b.and_(is_xor, b.xor_(a, c)),
                                  b.and_(is_not, b.not_(a)), is_one};
    wires.push_back(b.or_all(terms));
  }
  std::vector<Wire> out;
  for (std::size_t j = 0; j < cls.n_outputs; ++j, pos += kEncRefBits)
    out.push_back(select_wire(b, field(pos, kEncRefBits), wires));
  return out;
}

CbqsKeys cbqsfe_setup(const CbqsParams& p, Rng& rng, Transcript* t) {
  CbqsKeys keys{sig_keygen(p.sig, rng)};
  emit(t, "fe_setup",
       {{"scheme", "cbqs"}, {"s", p.s}, {"w", p.cls.w()}, {"sig_bits", p.sig.signature_bits()},
        {"max_keys", p.sig.max_sigs}});
  return keys;
}

CbqsFuncKey cbqsfe_keygen(CbqsKeys& keys, const CbqsParams& p, const BooleanCircuit& c) {
  auto enc = p.cls.encode(c);
  auto sigma = keys.mk.sign(enc);
  return CbqsFuncKey{c, std::move(enc), std::move(sigma)};
}

BooleanCircuit cbqsfe_program_circuit(const VerifyKey& pk, const BitVector& mu, const CbqsParams& p) {
  const std::size_t w = p.cls.w();
  CircuitBuilder b(p.input_bits());
  const auto enc = b.inputs(0, w);
  const Wire ok = build_verify(b, pk, enc, b.inputs(w, p.sig.signature_bits()));
  b.output(ok);
  for (auto y : build_universal_eval(b, p.cls, mu, enc)) b.output(b.and_(ok, y));
  return b.build();
}

OtpTransmission cbqsfe_enc_circuit(const BooleanCircuit& program, const CbqsParams& p, Rng& rng, Transcript* t) {
  auto ct = otp_yao_send(program, p.otp, rng, t);
  emit(t, "fe_enc", {{"scheme", "cbqs"}, {"inputs", program.n_inputs()}, {"gates", program.n_gates()}});
  return ct;
}

OtpTransmission cbqsfe_enc(const VerifyKey& pk, const BitVector& mu, const CbqsParams& p, Rng& rng, Transcript* t) {
  return cbqsfe_enc_circuit(cbqsfe_program_circuit(pk, mu, p), p, rng, t);
}

BitVector cbqsfe_key_input(const CbqsFuncKey& sk, const CbqsParams& p) {
  BitVector in = sk.c_enc;
  in.append(sk.sigma.to_bits(p.sig));
  return in;
}

std::optional<BitVector> cbqsfe_dec(const CbqsFuncKey& sk, OtpTransmission& ct, const CbqsParams& p, Rng& rng,
                                    Transcript* t) {
  const auto out = otp_yao_receive(ct, cbqsfe_key_input(sk, p), rng, t).output;
  emit(t, "fe_dec", {{"scheme", "cbqs"}, {"ok", out.get(0)}});
  if (!out.get(0)) return std::nullopt;
  return out.slice(1, p.cls.n_outputs);
}

}  // namespace bsfe
