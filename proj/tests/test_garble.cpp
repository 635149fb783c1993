#include <doctest.h>

#include "bsfe/error.hpp"
#include "bsfe/fixtures.hpp"
#include "bsfe/garble.hpp"

using namespace bsfe;

TEST_CASE("AND gate garbles to its truth table") {
  Rng rng(1);
  const auto c = fixture("and2");
  auto [gc, key] = gcircuit(c, rng);
  for (std::uint64_t x = 0; x < 4; ++x) {
    const auto in = BitVector::from_word(x, 2);
    CHECK(geval(gc, ginput_all(key, in)) == eval_circuit(c, in));
  }
  CHECK(gc.tables.size() == 1);
}

TEST_CASE("pass-through circuit decodes its input labels") {
  Rng rng(2);
  const auto c = fixture("pass1");
  auto [gc, key] = gcircuit(c, rng);
  CHECK(gc.decode[0].first == ginput(key, 0, false));
  CHECK(gc.decode[0].second == ginput(key, 0, true));
  CHECK(geval(gc, {ginput(key, 0, true)}) == BitVector::from_string("1"));
  CHECK(geval(gc, {ginput(key, 0, false)}) == BitVector::from_string("0"));
}

TEST_CASE("labels: distinct, deterministic, configured length") {
  Rng rng(3);
  auto [gc, key] = gcircuit(fixture("adder2"), rng);
  CHECK_FALSE(ginput(key, 0, false) == ginput(key, 0, true));
  CHECK(ginput(key, 0, false).select_bit() != ginput(key, 0, true).select_bit());
  CHECK(ginput(key, 1, true) == ginput(key, 1, true));
  CHECK(ginput(key, 0, false).bits(key.label_bits).size() == 128);
  CHECK_THROWS_AS(ginput(key, 4, false), Error);

  Rng rng2(3);
  auto [gc8, key8] = gcircuit(fixture("adder2"), rng2, GarbleConfig{8, 32});
  const auto l = ginput(key8, 2, true);
  CHECK(l.w[1] == 0);
  CHECK((l.w[0] >> 8) == 0);
}

TEST_CASE("exhaustive correctness on fixtures with up to 8 inputs") {
  Rng rng(4);
  for (const auto& f : fixtures()) {
    const auto c = parse_circuit(f.text);
    if (c.n_inputs() > 8) continue;
    for (GarbleConfig cfg : {GarbleConfig{128, 32}, GarbleConfig{8, 32}, GarbleConfig{100, 20}}) {
      auto [gc, key] = gcircuit(c, rng, cfg);
      for (std::uint64_t x = 0; x < (1ULL << c.n_inputs()); ++x) {
        const auto in = BitVector::from_word(x, c.n_inputs());
        INFO(f.name << " x=" << x);
        REQUIRE(geval(gc, ginput_all(key, in)) == eval_circuit(c, in));
      }
    }
  }
}

TEST_CASE("adder on random inputs") {
  Rng rng(5);
  const auto c = fixture("adder4");
  auto [gc, key] = gcircuit(c, rng);
  for (int t = 0; t < 10; ++t) {
    const auto in = BitVector::random(8, rng);
    CHECK(geval(gc, ginput_all(key, in)) == eval_circuit(c, in));
  }
}

TEST_CASE("forged labels are rejected") {
  Rng rng(6);
  const auto c = fixture("and2");
  int rejected = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    auto [gc, key] = gcircuit(c, rng);
    auto labels = ginput_all(key, BitVector::random(2, rng));
    labels[rng.below(2)] = WireLabel::random(128, rng);
    try {
      geval(gc, labels);
    } catch (const Error& e) {
      REQUIRE(e.code() == Errc::invalid_labels);
      ++rejected;
    }
  }
  // A forged label passes only if a 32-bit tag collides.
  CHECK(rejected == trials);
}

TEST_CASE("simulator output decodes to y and matches the real shape") {
  Rng rng(7);
  for (const auto& f : fixtures()) {
    const auto c = parse_circuit(f.text);
    const auto x = BitVector::random(c.n_inputs(), rng);
    const auto y = eval_circuit(c, x);
    auto [labels, sim] = gsimulate(x, y, topology_of(c), rng);
    CHECK(geval(sim, labels) == y);
    auto [real, key] = gcircuit(c, rng);
    CHECK(sim.top == real.top);
    CHECK(sim.tables.size() == real.tables.size());
    CHECK(sim.constants.size() == real.constants.size());
    CHECK(sim.decode.size() == real.decode.size());
    CHECK(sim.size_bits() == real.size_bits());
  }
}

TEST_CASE("topology hides the binary gate kind") {
  CHECK(topology_of(fixture("and2")) == topology_of(fixture("xor2")));
}
