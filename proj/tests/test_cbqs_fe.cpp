#include <doctest.h>

#include "bsfe/cbqs_fe.hpp"
#include "bsfe/error.hpp"
#include "bsfe/fixtures.hpp"
#include "fixture_oracles.hpp"

using namespace bsfe;

namespace {

std::vector<std::string> in_class(const GateListClass& cls) {
  std::vector<std::string> names;
  for (const auto& name : fixture_names())
    if (cls.contains(fixture(name))) names.push_back(name);
  return names;
}

BooleanCircuit random_circuit(std::size_t n_in, std::size_t gates, Rng& rng) {
  std::vector<Gate> gs;
  for (std::size_t k = 0; k < gates; ++k) {
    const auto wires = static_cast<std::uint32_t>(n_in + k);
    const auto op = static_cast<GateOp>(rng.below(5));
    const auto a = static_cast<std::uint32_t>(rng.below(wires));
    const auto b = static_cast<std::uint32_t>(rng.below(wires));
    gs.push_back(Gate{op, gate_arity(op) >= 1 ? a : 0, gate_arity(op) >= 2 ? b : 0});
  }
  const auto out = static_cast<std::uint32_t>(rng.below(n_in + gates));
  return BooleanCircuit(n_in, std::move(gs), {out});
}

}  // namespace

TEST_CASE("class membership and encoding width") {
  const GateListClass cls{};
  CHECK(cls.w() == 48 + 35 * 8 + 16);
  const auto names = in_class(cls);
  for (const auto* want : {"and2", "xor2", "or2", "not1", "pass1", "const1", "parity4", "eq2", "mux3"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  CHECK_FALSE(cls.contains(fixture("adder2")));
  try {
    cls.encode(fixture("adder4"));
    FAIL("expected class bound");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::class_bound);
  }
  // Padded encodings decode to an equivalent circuit.
  const auto enc = cls.encode(fixture("and2"));
  CHECK(enc.size() == cls.w());
  const auto back = decode_circuit(enc);
  CHECK(back.n_gates() == 8);
  for (std::uint64_t x = 0; x < 16; ++x) {
    const auto in = BitVector::from_word(x, 4);
    CHECK(back.eval(in).get(0) == (in.get(0) && in.get(1)));
  }
}

TEST_CASE("universal evaluator matches direct evaluation") {
  const GateListClass cls{};
  Rng rng(1);
  auto check = [&](const BooleanCircuit& c) {
    const auto enc = cls.encode(c);
    const auto wide = c.with_input_count(4);
    for (std::uint64_t x = 0; x < 16; ++x) {
      const auto mu = BitVector::from_word(x, 4);
      CircuitBuilder b(cls.w());
      for (auto w : build_universal_eval(b, cls, mu, b.inputs(0, cls.w()))) b.output(w);
      REQUIRE(b.build().eval(enc) == wide.eval(mu));
    }
  };
  for (const auto& name : in_class(cls)) check(fixture(name));
  for (int t = 0; t < 100; ++t) check(random_circuit(1 + rng.below(4), rng.below(9), rng));
}

TEST_CASE("keys verify natively") {
  CbqsParams p;
  Rng rng(2);
  auto keys = cbqsfe_setup(p, rng);
  const auto k1 = cbqsfe_keygen(keys, p, fixture("xor2"));
  const auto k2 = cbqsfe_keygen(keys, p, fixture("xor2"));
  CHECK(sig_verify(keys.pk(), k1.c_enc, k1.sigma));
  CHECK(sig_verify(keys.pk(), k2.c_enc, k2.sigma));
  CHECK(k1.sigma.slot != k2.sigma.slot);
  Rng other(3);
  auto keys2 = cbqsfe_setup(p, other);
  CHECK(keys2.pk().slots[0][0][0] != keys.pk().slots[0][0][0]);
  CHECK(keys.pk().hash_count() == p.sig.max_sigs * p.sig.hash_bits * 2);
  cbqsfe_keygen(keys, p, fixture("and2"));
  cbqsfe_keygen(keys, p, fixture("and2"));
  try {
    cbqsfe_keygen(keys, p, fixture("and2"));
    FAIL("expected depletion");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::key_depleted);
  }
}

TEST_CASE("program circuit agrees with native verify-then-evaluate") {
  CbqsParams p;
  Rng rng(4);
  auto keys = cbqsfe_setup(p, rng);
  const auto sk = cbqsfe_keygen(keys, p, fixture("maj3"));
  const auto mu = BitVector::from_string("1100");
  const auto prog = cbqsfe_program_circuit(keys.pk(), mu, p);
  CHECK(prog.n_inputs() == p.input_bits());
  const auto good = cbqsfe_key_input(sk, p);
  CHECK(prog.eval(good).to_string() == "11");
  for (int t = 0; t < 200; ++t) {
    auto bad = good;
    bad.flip(rng.below(bad.size()));
    const auto sig = Signature::from_bits(bad.slice(p.cls.w(), p.sig.signature_bits()), p.sig);
    const bool ok = sig_verify(keys.pk(), bad.slice(0, p.cls.w()), sig);
    REQUIRE(prog.eval(bad).get(0) == ok);
  }
}

TEST_CASE("end to end over the fixtures") {
  CbqsParams p;
  const auto names = in_class(p.cls);
  for (int run = 0; run < 100; ++run) {
    const auto& name = names[run % names.size()];
    Rng setup = Rng::derive(run, Stream::setup), snd = Rng::derive(run, Stream::sender),
        rcv = Rng::derive(run, Stream::receiver);
    auto keys = cbqsfe_setup(p, setup);
    const auto sk = cbqsfe_keygen(keys, p, fixture(name));
    const auto mu = BitVector::random(4, setup);
    auto ct = cbqsfe_enc(keys.pk(), mu, p, snd);
    const auto y = cbqsfe_dec(sk, ct, p, rcv);
    REQUIRE_MESSAGE(y.has_value(), name);
    REQUIRE(y->get(0) == (fixture_oracle::expected(name, mu) & 1U));
  }
}

TEST_CASE("invalid signatures, wrong keys, reuse") {
  CbqsParams p;
  Rng rng(5);
  auto keys = cbqsfe_setup(p, rng);
  auto sk = cbqsfe_keygen(keys, p, fixture("or2"));
  const auto mu = BitVector::from_string("1000");
  {
    auto bad = sk;
    bad.sigma.preimages[3].flip(0);
    auto ct = cbqsfe_enc(keys.pk(), mu, p, rng);
    CHECK_FALSE(cbqsfe_dec(bad, ct, p, rng).has_value());
    CHECK_THROWS_AS(cbqsfe_dec(sk, ct, p, rng), Error);
  }
  {
    Rng other(6);
    auto keys2 = cbqsfe_setup(p, other);
    const auto foreign = cbqsfe_keygen(keys2, p, fixture("or2"));
    auto ct = cbqsfe_enc(keys.pk(), mu, p, rng);
    CHECK_FALSE(cbqsfe_dec(foreign, ct, p, rng).has_value());
  }
  {
    auto ct = cbqsfe_enc(keys.pk(), mu, p, rng);
    CHECK(cbqsfe_dec(sk, ct, p, rng).value().to_string() == "1");
  }
}

TEST_CASE("ciphertext qubits grow linearly in the input length") {
  CbqsParams p;
  Rng rng(7);
  auto keys = cbqsfe_setup(p, rng);
  const auto ct = cbqsfe_enc(keys.pk(), BitVector(4), p, rng);
  CHECK(ct.block_qubits() == 16 * 8 + 8 * 16);
  CHECK(ct.qubit_count() == p.input_bits() * ct.block_qubits());
  CbqsParams wider = p;
  wider.cls.max_gates = 16;
  const auto ct2 = cbqsfe_enc(keys.pk(), BitVector(4), wider, rng);
  CHECK(ct2.qubit_count() - ct.qubit_count() == 8 * kEncGateBits * ct.block_qubits());
}
