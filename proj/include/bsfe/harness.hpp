#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsfe/bcs_fe.hpp"
#include "bsfe/cbqs_fe.hpp"
#include "bsfe/channel.hpp"
#include "bsfe/ot.hpp"

namespace bsfe {

struct Interval {
  double lo = 0;
  double hi = 1;
};

// Wilson score interval for k successes in n trials (95% by default).
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

struct ExperimentSpec {
  std::string scenario;  // cbqs-ind, ot-sender, bcs-forget
  std::string strategy;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  // Scenario parameters by name. Each runner rejects names it does not use.
  std::map<std::string, std::int64_t> params;
};

struct ExperimentResult {
  std::string scenario;
  std::string strategy;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0;
  Interval ci;
  std::uint64_t adversary_violations = 0;
  std::uint64_t honest_violations = 0;
  // Scenario-specific counters (e.g. the no-reveal arm of the IND game).
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// ---- OT sender security -------------------------------------------------

struct OtGuess {
  bool declared = false;  // c'
  BitVector own;          // best value for s_{c'}
  BitVector other;        // guess of s_{1-c'}
};

// A receiver that measures or stores qubits (stored count checked at the
// bound) and afterwards declares a branch and guesses the other string.
class OtAttack : public ReceiverStrategy {
 public:
  virtual void start(const OtParams& p, Rng&) { params_ = p; }
  virtual OtGuess guess(const OtAnnouncement& ann, ReceiverOutcome& out, Rng& rng) = 0;

 protected:
  OtParams params_;
};

// ---- CBQS-FE IND game ---------------------------------------------------

// Key-generation oracle of step 2; every query is recorded.
class KeyOracle {
 public:
  KeyOracle(CbqsKeys& keys, const CbqsParams& p) : keys_(keys), p_(p) {}
  CbqsFuncKey operator()(const BooleanCircuit& c);
  const std::vector<BooleanCircuit>& queries() const { return queries_; }

 private:
  CbqsKeys& keys_;
  const CbqsParams& p_;
  std::vector<BooleanCircuit> queries_;
};

struct IndContext {
  const CbqsParams& params;
  const VerifyKey& pk;
  const OtpClassical* classical = nullptr;
  ReceiverOutcome* outcome = nullptr;
  // Measured and post-bound bits per qubit.
  BitVector bits;
};

class IndStrategy : public ReceiverStrategy {
 public:
  // Step 2: queries and the two challenge messages.
  virtual std::pair<BitVector, BitVector> choose(IndContext& ctx, KeyOracle& oracle, Rng& rng) = 0;
  // After the bound and the classical part: measure anything stored.
  virtual void after_bound(IndContext& ctx, Rng& rng);
  // Step 5. `mk` is the revealed signing key (nullptr in the no-reveal
  // arm); it is a copy the strategy may use freely. `coin` is shared by the
  // two arms.
  virtual bool guess(IndContext& ctx, SigKeyPair* mk, Rng coin) = 0;

  DecisionMask decide(std::size_t begin, std::size_t count, Rng& rng) override;

 protected:
  // Per-qubit plan set in choose(); default: discard everything.
  BitVector measure_, store_, basis_;
  void plan_measure(const BitVector& x, const CbqsParams& p);
};

// ---- BCS forgetting experiment ------------------------------------------

// An adversary that keeps part of the master stream within its budget and
// must then output sk_C for a code outside the span of the rows it holds
// completely.
class ForgetAttack {
 public:
  virtual ~ForgetAttack() = default;
  virtual std::uint64_t budget(const BcsParams& p) const = 0;
  virtual void start(const BcsParams& p) { p_ = p; }
  virtual void observe(const BitVector& chunk, std::size_t offset) = 0;
  virtual std::uint64_t stored_bits() const = 0;
  // Rows held in full; the challenger draws c with support elsewhere.
  virtual std::vector<bool> full_rows() const = 0;
  virtual BitVector guess(const BitVector& code, Rng& rng) const = 0;

 protected:
  BcsParams p_;
};

// ---- registries ---------------------------------------------------------

using OtAttackFactory = std::function<std::unique_ptr<OtAttack>()>;
using IndStrategyFactory = std::function<std::unique_ptr<IndStrategy>()>;
using ForgetAttackFactory = std::function<std::unique_ptr<ForgetAttack>(const ExperimentSpec&)>;

void register_ot_attack(const std::string& id, OtAttackFactory f);
void register_ind_strategy(const std::string& id, IndStrategyFactory f);
void register_forget_attack(const std::string& id, ForgetAttackFactory f);
std::vector<std::string> ot_attack_ids();
std::vector<std::string> ind_strategy_ids();
std::vector<std::string> forget_attack_ids();

// ot-sender. Params: l (8), s (32), m (16l+8s), enforce (1).
ExperimentResult run_ot_sender_security(const ExperimentSpec& spec, Transcript* t = nullptr);
// cbqs-ind. Params: s (16), l (8). Success counts the reveal arm; extra
// holds the no-reveal arm and the disqualification count.
ExperimentResult run_ind_game(const ExperimentSpec& spec, Transcript* t = nullptr);
// bcs-forget. Params: n (64), u (unknown bits for half-row).
ExperimentResult run_forgetting(const ExperimentSpec& spec, Transcript* t = nullptr);
ExperimentResult run_experiment(const ExperimentSpec& spec, Transcript* t = nullptr);

std::string summary_table(const std::vector<ExperimentResult>& results);

}  // namespace bsfe
