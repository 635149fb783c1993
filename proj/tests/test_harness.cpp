#include <doctest.h>

#include <cmath>

#include "bsfe/harness.hpp"

using namespace bsfe;

namespace {

ExperimentSpec make(const std::string& scenario, const std::string& strategy, std::uint64_t trials,
                    std::map<std::string, std::int64_t> params = {}, std::uint64_t seed = 11) {
  return ExperimentSpec{scenario, strategy, trials, seed, std::move(params)};
}

// Measures nothing and answers all-zero strings.
class BlindOt : public OtAttack {
 public:
  DecisionMask decide(std::size_t, std::size_t count, Rng&) override {
    return DecisionMask{BitVector(count), BitVector(count), BitVector(count)};
  }
  OtGuess guess(const OtAnnouncement&, ReceiverOutcome&, Rng&) override {
    return OtGuess{false, BitVector(params_.ell), BitVector(params_.ell)};
  }
};

}  // namespace

TEST_CASE("wilson interval matches tabulated values") {
  // Newcombe (1998), table I.
  auto a = wilson_interval(0, 10);
  CHECK(a.lo == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(a.hi == doctest::Approx(0.2775).epsilon(1e-3));
  auto b = wilson_interval(5, 10);
  CHECK(b.lo == doctest::Approx(0.2366).epsilon(1e-3));
  CHECK(b.hi == doctest::Approx(0.7634).epsilon(1e-3));
  auto c = wilson_interval(81, 263);
  CHECK(c.lo == doctest::Approx(0.2553).epsilon(1e-3));
  CHECK(c.hi == doctest::Approx(0.3662).epsilon(1e-3));
  auto d = wilson_interval(10, 10);
  CHECK(d.hi == doctest::Approx(1.0));
  CHECK(d.lo == doctest::Approx(0.7225).epsilon(1e-3));
}

TEST_CASE("ot sender security: registered strategies stay near 2^-l") {
  const double bound = 2.0 / 256.0;
  for (const auto& id : {"fixed-basis", "random-basis", "s-storage"}) {
    CAPTURE(id);
    auto r = run_experiment(make("ot-sender", id, 4000));
    CHECK(r.trials == 4000);
    CHECK(r.successes <= r.trials);
    CHECK(r.honest_violations == 0);
    CHECK(r.adversary_violations == 0);
    CHECK(r.ci.lo <= bound);
    CHECK(r.extra["m"] == 384);
  }
}

TEST_CASE("ot sender security: honest receiver always gets its own branch") {
  auto r = run_experiment(make("ot-sender", "honest", 500));
  CHECK(r.extra["declared_branch_successes"] == 500);
  CHECK(r.estimate < 0.05);
}

TEST_CASE("ot sender security: storage above the bound gives a measurable advantage") {
  CHECK_THROWS_AS(run_experiment(make("ot-sender", "s-storage", 10, {{"m", 16}, {"s", 4}})), Error);
  auto weak = run_experiment(make("ot-sender", "s-storage", 2000, {{"m", 16}, {"s", 4}, {"enforce", 0}}));
  CHECK(weak.ci.lo > 2.0 / 256.0 + 0.05);
  CHECK(weak.extra["stored_peak"] == 4);
}

TEST_CASE("strategy registry is open") {
  register_ot_attack("blind", [] { return std::make_unique<BlindOt>(); });
  const auto ids = ot_attack_ids();
  CHECK(std::find(ids.begin(), ids.end(), "blind") != ids.end());
  auto r = run_experiment(make("ot-sender", "blind", 2000));
  // All-zero answers hit a uniform 8-bit string with probability 2^-8.
  CHECK(r.ci.lo <= 1.0 / 256.0);
  CHECK(r.ci.hi >= 1.0 / 256.0);
}

TEST_CASE("unknown strategies, scenarios and parameters are usage errors") {
  auto code = [](const ExperimentSpec& s) {
    try {
      run_experiment(s);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::internal;
  };
  CHECK(code(make("ot-sender", "nope", 1)) == Errc::usage);
  CHECK(code(make("nope", "honest", 1)) == Errc::usage);
  CHECK(code(make("ot-sender", "honest", 1, {{"n", 3}})) == Errc::usage);
  CHECK(code(make("bcs-forget", "prefix", 0)) == Errc::usage);
}

TEST_CASE("ind game: random guessing is a fair coin and disqualification voids wins") {
  auto rnd = run_experiment(make("cbqs-ind", "random-guess", 60));
  CHECK(rnd.ci.lo <= 0.5);
  CHECK(rnd.ci.hi >= 0.5);
  CHECK(rnd.honest_violations == 0);
  CHECK(rnd.extra["disqualified"] == 0);

  auto dq = run_experiment(make("cbqs-ind", "disqualified", 30));
  CHECK(dq.successes == 0);
  CHECK(dq.extra["without_reveal"] == 0);
  CHECK(dq.extra["disqualified"] == 30);
}

TEST_CASE("ind game: reveal arm and no-reveal arm are both reported") {
  for (const auto& id : ind_strategy_ids()) {
    CAPTURE(id);
    auto r = run_experiment(make("cbqs-ind", id, 12));
    const auto without = r.extra["without_reveal"].get<std::uint64_t>();
    CHECK(without <= r.trials);
    const double p0 = static_cast<double>(without) / 12.0;
    CHECK(r.extra["sigma"].get<double>() == doctest::Approx(std::sqrt(p0 * (1 - p0) / 12.0)));
    CHECK(r.extra["reveal_delta"].get<double>() == doctest::Approx(r.estimate - p0));
    CHECK(r.honest_violations == 0);
  }
}

TEST_CASE("forgetting: prefix storage fails, full storage wins") {
  auto prefix = run_experiment(make("bcs-forget", "prefix", 200, {{"n", 16}}));
  CHECK(prefix.successes == 0);
  CHECK(prefix.adversary_violations == 0);
  auto full = run_experiment(make("bcs-forget", "full", 200, {{"n", 16}}));
  CHECK(full.successes == 200);
  CHECK(full.honest_violations == 0);
}

TEST_CASE("forgetting: half-row knowledge succeeds with probability 2^-u") {
  auto r = run_experiment(make("bcs-forget", "half-row", 3000, {{"n", 16}, {"u", 3}}));
  CHECK(r.ci.lo <= 0.125);
  CHECK(r.ci.hi >= 0.125);
  auto none = run_experiment(make("bcs-forget", "half-row", 300, {{"n", 16}}));
  CHECK(none.successes == 0);
}

TEST_CASE("experiments are deterministic under a fixed seed") {
  for (const auto& spec : {make("ot-sender", "random-basis", 300), make("cbqs-ind", "store-s-measure-rest", 6),
                           make("bcs-forget", "half-row", 100, {{"n", 8}, {"u", 2}})}) {
    CAPTURE(spec.scenario);
    CHECK(run_experiment(spec).to_json().dump() == run_experiment(spec).to_json().dump());
  }
  CHECK(run_experiment(make("ot-sender", "random-basis", 300, {}, 1)).to_json().dump() !=
        run_experiment(make("ot-sender", "random-basis", 300, {}, 2)).to_json().dump());
}

TEST_CASE("summary table lists every result") {
  std::vector<ExperimentResult> rs{run_experiment(make("bcs-forget", "full", 5, {{"n", 4}})),
                                   run_experiment(make("bcs-forget", "prefix", 5, {{"n", 4}}))};
  const auto table = summary_table(rs);
  CHECK(table.find("full") != std::string::npos);
  CHECK(table.find("prefix") != std::string::npos);
  CHECK(table.find("bcs-forget") != std::string::npos);
}

TEST_CASE("strict mode turns honest overruns into errors") {
  set_strict_honest_ledgers(true);
  Ledger adversary("adv", 1, Party::adversary, "bits");
  adversary.hold(5);
  CHECK_FALSE(adversary.check());
  Ledger honest("receiver", 1, Party::honest, "bits");
  const auto before = honest_violation_total();
  try {
    honest.hold(2);
    FAIL("expected a ledger violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ledger_violation);
  }
  CHECK(honest_violation_total() == before + 1);
  set_strict_honest_ledgers(false);
  honest.hold(1);
  CHECK(honest.violations() == 2);
}
