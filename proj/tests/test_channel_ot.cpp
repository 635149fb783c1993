#include <doctest.h>

#include <cmath>

#include "bsfe/channel.hpp"
#include "bsfe/error.hpp"
#include "bsfe/ot.hpp"

using namespace bsfe;

namespace {

// Stores the first k qubits, measures the rest in +.
class StorePrefix : public ReceiverStrategy {
 public:
  explicit StorePrefix(std::size_t k) : k_(k) {}
  DecisionMask decide(std::size_t begin, std::size_t count, Rng&) override {
    DecisionMask d{BitVector(count), BitVector(count), BitVector(count)};
    for (std::size_t i = 0; i < count; ++i) {
      if (begin + i < k_)
        d.store.set(i, true);
      else
        d.measure.set(i, true);
    }
    return d;
  }

 private:
  std::size_t k_;
};

class RandomBasis : public ReceiverStrategy {
 public:
  DecisionMask decide(std::size_t, std::size_t count, Rng& rng) override {
    return DecisionMask::measure_all(count, BitVector::random(count, rng));
  }
};

}  // namespace

TEST_CASE("single-qubit measurement") {
  Rng rng(1);
  Qubit a(true, kRect);
  CHECK(measure(a, kRect, rng) == true);
  Qubit b(false, kDiag);
  CHECK(measure(b, kDiag, rng) == false);
  try {
    measure(b, kDiag, rng);
    FAIL("expected consumed error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::consumed);
  }
}

TEST_CASE("mismatched-basis measurement is a fair coin") {
  Rng rng(2);
  const int trials = 10000;
  int ones = 0;
  for (int t = 0; t < trials; ++t) {
    Qubit q(true, kDiag);
    ones += measure(q, kRect, rng);
  }
  const double mean = static_cast<double>(ones) / trials;
  // 3 sigma of a fair binomial at 10^4 trials is 0.015.
  CHECK(std::abs(mean - 0.5) <= 0.015);
}

TEST_CASE("apply_bound enforcement") {
  Ledger zero("a", 0, Party::adversary);
  CHECK(apply_bound(zero));
  Ledger full("b", 8, Party::adversary);
  full.hold(8);
  CHECK(apply_bound(full));
  CHECK(full.peak() == 8);
  Ledger over("c", 8, Party::adversary);
  over.hold(9);
  CHECK_FALSE(apply_bound(over));
  CHECK(over.violations() == 1);
}

TEST_CASE("transmit: honest exact, storage peak, random basis") {
  Rng rng(3);
  {
    QuantumMessage msg;
    const auto bits = BitVector::random(100, rng);
    msg.append(bits, BitVector(100));
    msg.add_bound_marker();
    Ledger l("r", 0, Party::honest);
    BasisStrategy s(BitVector(100));
    Channel ch;
    const auto out = ch.transmit(std::move(msg), s, l, rng);
    CHECK(out.bits() == bits);
    CHECK(l.peak() == 0);
  }
  {
    QuantumMessage msg;
    msg.append(BitVector::random(64, rng), BitVector::random(64, rng));
    msg.add_bound_marker();
    Ledger l("adv", 16, Party::adversary);
    StorePrefix s(16);
    Channel ch;
    auto out = ch.transmit(std::move(msg), s, l, rng);
    CHECK(l.peak() == 16);
    CHECK(l.ok());
    CHECK(out.stored_count() == 16);
    out.measure_stored(3, kRect, rng);
    CHECK(out.stored_count() == 15);
    CHECK(l.current() == 15);
    CHECK_THROWS_AS(out.measure_stored(3, kRect, rng), Error);
  }
  {
    const std::size_t m = 10000;
    QuantumMessage msg;
    const auto bits = BitVector::random(m, rng);
    msg.append(bits, BitVector(m));
    msg.add_bound_marker();
    Ledger l("r", 0, Party::honest);
    RandomBasis s;
    Channel ch;
    const auto out = ch.transmit(std::move(msg), s, l, rng);
    // Matching basis (half the time) is always right, mismatched half the
    // time: expected agreement 3/4. Against a fresh random string, 1/2.
    const double agree = 1.0 - static_cast<double>((out.bits() ^ bits).popcount()) / m;
    CHECK(std::abs(agree - 0.75) <= 0.02);
    const auto other = BitVector::random(m, rng);
    const double chance = 1.0 - static_cast<double>((out.bits() ^ other).popcount()) / m;
    CHECK(std::abs(chance - 0.5) <= 0.02);
  }
}

TEST_CASE("marker count is capped by r") {
  QuantumMessage msg(1);
  msg.add_bound_marker();
  CHECK_THROWS_AS(msg.add_bound_marker(), Error);
}

TEST_CASE("OT parameter check") {
  CHECK(ot_params_secure(OtParams{384, 8, 32}));  // 96 - 16 - 32 = 48 >= 48
  CHECK_FALSE(ot_params_secure(OtParams{64, 8, 32}));
  CHECK(ot_min_qubits(8, 32) == 384);
  Rng rng(4);
  try {
    OtSender(OtParams{64, 8, 32}, rng);
    FAIL("expected insecure parameters");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insecure_parameters);
  }
}

TEST_CASE("OT correctness over 1000 seeded runs") {
  const auto p = ot_params_for(8, 32);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng setup = Rng::derive(seed, Stream::setup);
    const auto s0 = BitVector::random(8, setup), s1 = BitVector::random(8, setup);
    const bool c = setup.bit();
    Rng srng = Rng::derive(seed, Stream::sender), rrng = Rng::derive(seed, Stream::receiver);
    const auto run = run_ot(p, s0, s1, c, srng, rrng);
    REQUIRE(run.y == (c ? s1 : s0));
    REQUIRE(run.receiver_peak == 0);
  }
}

TEST_CASE("equal strings decode identically for both choices") {
  const auto p = ot_params_for(8, 32);
  Rng setup(5);
  const auto s = BitVector::random(8, setup);
  for (bool c : {false, true}) {
    Rng srng(6), rrng(7);
    CHECK(run_ot(p, s, s, c, srng, rrng).y == s);
  }
}

TEST_CASE("sender transcript does not depend on the choice bit") {
  const auto p = ot_params_for(8, 32);
  Rng setup(8);
  const auto s0 = BitVector::random(8, setup), s1 = BitVector::random(8, setup);
  Transcript t0, t1;
  Rng sa(9), ra(10), sb(9), rb(11);
  run_ot(p, s0, s1, false, sa, ra, &t0);
  run_ot(p, s0, s1, true, sb, rb, &t1);
  CHECK(t0.events() > 0);
  CHECK(t0.text() == t1.text());
}

TEST_CASE("wrong fixed basis recovers s_c at about 2^-8") {
  const auto p = ot_params_for(8, 32);
  const int trials = 100000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    Rng srng = Rng::derive(t, Stream::sender), rrng = Rng::derive(t, Stream::receiver);
    const auto s0 = BitVector::random(8, srng), s1 = BitVector::random(8, srng);
    OtSender sender(p, srng);
    QuantumMessage msg;
    sender.prepare(msg);
    msg.add_bound_marker();
    Ledger l("r", 0, Party::honest);
    // Wants s0 but measures everything in x.
    BasisStrategy wrong(BitVector::ones(p.m));
    Channel ch;
    const auto out = ch.transmit(std::move(msg), wrong, l, rrng);
    hits += ot_receive(false, out.bits(), sender.announce(s0, s1)) == s0;
  }
  const double rate = static_cast<double>(hits) / trials;
  MESSAGE("wrong-basis success " << rate);
  CHECK(rate >= 0.002);
  CHECK(rate <= 0.006);
}
