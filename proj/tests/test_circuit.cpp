#include <doctest.h>

#include <filesystem>
#include <set>

#include "bsfe/circuit.hpp"
#include "bsfe/error.hpp"
#include "bsfe/fixtures.hpp"
#include "fixture_oracles.hpp"

using namespace bsfe;

namespace {

Errc error_of(std::string_view text) {
  try {
    parse_circuit(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

std::string message_of(std::string_view text) {
  try {
    parse_circuit(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("single AND gate") {
  const auto c = parse_circuit("in 2\ng0 = AND in0 in1\nout g0\n");
  CHECK(c.n_inputs() == 2);
  CHECK(c.n_gates() == 1);
  CHECK(c.n_outputs() == 1);
  CHECK(eval_circuit(c, BitVector::from_string("11")) == BitVector::from_string("1"));
  CHECK(eval_circuit(c, BitVector::from_string("10")) == BitVector::from_string("0"));
  const auto x = parse_circuit("in 2\ng0 = XOR in0 in1\nout g0");
  CHECK(eval_circuit(x, BitVector::from_string("11")) == BitVector::from_string("0"));
}

TEST_CASE("emit/parse round trip on every fixture") {
  for (const auto& f : fixtures()) {
    const auto c = parse_circuit(f.text);
    CHECK(parse_circuit(emit_circuit(c)) == c);
  }
}

TEST_CASE("circuit files match the built-in fixtures") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(BSFE_CIRCUIT_DIR)) {
    if (entry.path().extension() != ".circ") continue;
    const auto name = entry.path().stem().string();
    INFO(name);
    CHECK(load_circuit_file(entry.path().string()) == fixture(name));
    ++seen;
  }
  CHECK(seen == fixtures().size());
}

TEST_CASE("exhaustive fixture evaluation against integer oracles") {
  for (const auto& f : fixtures()) {
    const auto c = parse_circuit(f.text);
    REQUIRE(c.n_inputs() <= 10);
    const std::size_t rows = std::size_t{1} << c.n_inputs();
    const auto tt = c.truth_table();
    for (std::size_t x = 0; x < rows; ++x) {
      const auto in = BitVector::from_word(x, c.n_inputs());
      const auto expect = fixture_oracle::expected(f.name, in);
      const auto out = eval_circuit(c, in);
      INFO(f.name << " x=" << x);
      REQUIRE(fixture_oracle::bits_of(out, 0, out.size()) == expect);
      for (std::size_t j = 0; j < c.n_outputs(); ++j)
        REQUIRE(tt.get(x * c.n_outputs() + j) == out.get(j));
    }
  }
}

TEST_CASE("adder on (1,0,1,1) gives 1 + 3 = 4") {
  const auto c = fixture("adder2");
  // a = in0 + 2*in1 = 1, b = in2 + 2*in3 = 3.
  CHECK(eval_circuit(c, BitVector::from_string("1011")) == BitVector::from_string("001"));
}

TEST_CASE("arity mismatch is a shape error") {
  try {
    eval_circuit(fixture("and2"), BitVector(3));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::shape);
  }
}

TEST_CASE("parser errors") {
  CHECK(error_of("in 2\ng0 = AND in0 g0\nout g0") == Errc::cycle);
  CHECK(error_of("in 2\ng0 = AND in0 g1\ng1 = NOT in0\nout g0") == Errc::cycle);
  CHECK(error_of("in 2\ng0 = AND in0 in5\nout g0") == Errc::cycle);
  CHECK(error_of("in 2\ng0 = AND in0 in1\nout g3") == Errc::cycle);
  CHECK(error_of("in 2\ng0 = NAND in0 in1\nout g0") == Errc::syntax);
  CHECK(error_of("in 2\ng1 = AND in0 in1\nout g1") == Errc::syntax);
  CHECK(error_of("in 2\ng0 = AND in0\nout g0") == Errc::syntax);
  CHECK(error_of("g0 = AND in0 in1\nout g0") == Errc::syntax);
  CHECK(error_of("in 2\ng0 = AND in0 in1\n") == Errc::syntax);
  CHECK(message_of("in 2\n# comment\ng0 = FOO in0 in1\nout g0").find("line 3") != std::string::npos);
  CHECK(message_of("in 2\ng0 = AND in0 in9\nout g0").find("undefined wire") != std::string::npos);
  CHECK(message_of("in 2\ng0 = AND in0 g0\nout g0").find("cycle") != std::string::npos);
}

TEST_CASE("encoding layout and inverse") {
  const auto c = fixture("and2");
  // 48-bit header + one 35-bit gate + one 16-bit output ref = 99 bits used.
  CHECK(encoded_size(c) == 99);
  const auto e = encode_circuit(c, 256);
  CHECK(e.size() == 256);
  CHECK(decode_circuit(e) == c);

  std::set<std::string> seen;
  for (const auto& f : fixtures()) {
    const auto k = parse_circuit(f.text);
    const auto enc = encode_circuit(k, 1024);
    CHECK(decode_circuit(enc) == k);
    seen.insert(enc.to_hex());
  }
  CHECK(seen.size() == fixtures().size());

  try {
    encode_circuit(fixture("adder4"), 256);
    FAIL("expected class bound error");
  } catch (const Error& e2) {
    CHECK(e2.code() == Errc::class_bound);
  }

  auto bad = e;
  bad.set(255, true);
  CHECK_THROWS_AS(decode_circuit(bad), Error);
}

TEST_CASE("widening inputs preserves behaviour") {
  const auto c = fixture("maj3");
  const auto w = c.with_input_count(5);
  CHECK(w.n_inputs() == 5);
  for (std::uint64_t x = 0; x < 32; ++x)
    CHECK(w.eval(BitVector::from_word(x, 5)) == c.eval(BitVector::from_word(x & 7, 3)));
}

TEST_CASE("builder folds constants and double negation") {
  CircuitBuilder b(2);
  const auto a = b.input(0), x = b.input(1);
  CHECK(b.and_(a, b.constant(false)).id == b.constant(false).id);
  CHECK(b.and_(a, b.constant(true)).id == a.id);
  CHECK(b.not_(b.not_(a)).id == a.id);
  CHECK(b.xor_(a, a).id == b.constant(false).id);
  const auto m = b.mux(a, x, b.not_(x));
  b.output(m);
  b.output(b.or_(a, x));
  const auto c = b.build();
  for (std::uint64_t v = 0; v < 4; ++v) {
    const bool ia = v & 1, ix = (v >> 1) & 1;
    const auto out = c.eval(BitVector::from_word(v, 2));
    CHECK(out.get(0) == (ia ? !ix : ix));
    CHECK(out.get(1) == (ia || ix));
  }
}
