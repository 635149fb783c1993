#include "bsfe/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace bsfe {

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0, 1};
  const double nn = static_cast<double>(n), p = static_cast<double>(k) / nn, z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

nlohmann::json ExperimentResult::to_json() const {
  return {{"scenario", scenario},
          {"strategy", strategy},
          {"trials", trials},
          {"successes", successes},
          {"estimate", estimate},
          {"ci_lo", ci.lo},
          {"ci_hi", ci.hi},
          {"adversary_violations", adversary_violations},
          {"honest_violations", honest_violations},
          {"extra", extra}};
}

namespace {

std::int64_t param(const ExperimentSpec& spec, const std::string& name, std::int64_t def) {
  auto it = spec.params.find(name);
  return it == spec.params.end() ? def : it->second;
}

void check_params(const ExperimentSpec& spec, std::initializer_list<const char*> known) {
  const std::set<std::string> ok(known.begin(), known.end());
  for (const auto& [k, v] : spec.params)
    if (!ok.contains(k)) fail(Errc::usage, "parameter '" + k + "' does not apply to " + spec.scenario);
  require(spec.trials >= 1, Errc::usage, "trial count must be at least 1");
}

ExperimentResult make_result(const ExperimentSpec& spec, std::uint64_t successes) {
  ExperimentResult r;
  r.scenario = spec.scenario;
  r.strategy = spec.strategy;
  r.trials = spec.trials;
  r.successes = successes;
  r.estimate = static_cast<double>(successes) / static_cast<double>(spec.trials);
  r.ci = wilson_interval(successes, spec.trials);
  return r;
}

template <class F>
struct Registry {
  std::map<std::string, F> items;
  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : items) out.push_back(k);
    return out;
  }
  const F& get(const std::string& id, const char* what) const {
    auto it = items.find(id);
    if (it == items.end()) fail(Errc::usage, std::string("unknown ") + what + " strategy '" + id + "'");
    return it->second;
  }
};

// ---- OT attacks ---------------------------------------------------------

// Positions of branch b (theta_i = b) whose value the receiver knows.
std::size_t known_in(const OtAnnouncement& ann, const BitVector& known, bool b) {
  return (ann.mask(b) & known).popcount();
}

OtGuess guess_from(bool declared, const BitVector& bits, const OtAnnouncement& ann) {
  return OtGuess{declared, ot_receive(declared, bits, ann), ot_receive(!declared, bits, ann)};
}

class HonestOt : public OtAttack {
 public:
  void start(const OtParams& p, Rng& rng) override {
    params_ = p;
    c_ = rng.bit();
  }
  DecisionMask decide(std::size_t, std::size_t count, Rng&) override {
    return DecisionMask::measure_all(count, c_ ? BitVector::ones(count) : BitVector(count));
  }
  OtGuess guess(const OtAnnouncement& ann, ReceiverOutcome& out, Rng&) override {
    return guess_from(c_, out.bits(), ann);
  }

 private:
  bool c_ = false;
};

class FixedBasisOt : public OtAttack {
 public:
  DecisionMask decide(std::size_t, std::size_t count, Rng&) override {
    return DecisionMask::measure_all(count, BitVector(count));
  }
  OtGuess guess(const OtAnnouncement& ann, ReceiverOutcome& out, Rng&) override {
    return guess_from(false, out.bits(), ann);
  }
};

// Measures in random bases; declares the branch with more matched bases.
class RandomBasisOt : public OtAttack {
 public:
  DecisionMask decide(std::size_t, std::size_t count, Rng& rng) override {
    return DecisionMask::measure_all(count, BitVector::random(count, rng));
  }
  OtGuess guess(const OtAnnouncement& ann, ReceiverOutcome& out, Rng&) override {
    const BitVector matched = ~(out.basis() ^ ann.theta);
    return guess_from(known_in(ann, matched, true) > known_in(ann, matched, false), out.bits(), ann);
  }
};

// Stores s random qubits, measures the rest in random bases, and measures
// the stored ones in the announced bases.
class StorageOt : public OtAttack {
 public:
  DecisionMask decide(std::size_t, std::size_t count, Rng& rng) override {
    DecisionMask d = DecisionMask::measure_all(count, BitVector::random(count, rng));
    std::vector<std::size_t> pos(count);
    for (std::size_t i = 0; i < count; ++i) pos[i] = i;
    const std::size_t keep = std::min(params_.s, count);
    for (std::size_t i = 0; i < keep; ++i) {
      std::swap(pos[i], pos[i + rng.below(count - i)]);
      d.store.set(pos[i], true);
      d.measure.set(pos[i], false);
    }
    return d;
  }
  OtGuess guess(const OtAnnouncement& ann, ReceiverOutcome& out, Rng& rng) override {
    BitVector bits = out.bits();
    BitVector known = ~(out.basis() ^ ann.theta) & out.measured();
    const BitVector stored = out.stored();
    for (std::size_t i = 0; i < stored.size(); ++i)
      if (stored.get(i)) {
        bits.set(i, out.measure_stored(i, ann.theta.get(i), rng));
        known.set(i, true);
      }
    return guess_from(known_in(ann, known, true) > known_in(ann, known, false), bits, ann);
  }
};

// ---- IND strategies -----------------------------------------------------

BooleanCircuit pass_circuit(std::size_t k) { return BooleanCircuit(4, {}, {static_cast<std::uint32_t>(k)}); }
BooleanCircuit const0_circuit() { return BooleanCircuit(4, {Gate{GateOp::Const0, 0, 0}}, {4}); }

std::pair<BitVector, BitVector> distinct_messages(Rng& rng) {
  const auto m0 = BitVector::random(4, rng);
  return {m0, m0 ^ BitVector::from_word(1 + rng.below(15), 4)};
}

std::size_t first_difference(const BitVector& a, const BitVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.get(i) != b.get(i)) return i;
  return 0;
}

std::optional<BitVector> try_eval(const IndContext& ctx, const BitVector& x) {
  try {
    const std::size_t block = ctx.params.otp.block_qubits();
    return geval(ctx.classical->gc, otp_unmask_labels(*ctx.classical, ctx.bits, x, block));
  } catch (const Error& e) {
    if (e.code() != Errc::invalid_labels) throw;
    return std::nullopt;
  }
}

// Strategies that remember their challenge messages and, given the signing
// key, sign a circuit separating m0 from m1 and try to evaluate the
// ciphertext on it with whatever they kept.
class RevealingStrategy : public IndStrategy {
 public:
  bool guess(IndContext& ctx, SigKeyPair* mk, Rng coin) override {
    if (mk == nullptr || mk->remaining() == 0) return fallback(ctx, coin);
    const std::size_t k = first_difference(m0_, m1_);
    BitVector x = ctx.params.cls.encode(pass_circuit(k));
    x.append(mk->sign(x).to_bits(ctx.params.sig));
    const auto y = try_eval(ctx, x);
    if (!y || !y->get(0)) return coin.bit();
    return y->get(1) == m1_.get(k);
  }

 protected:
  virtual bool fallback(IndContext&, Rng& coin) { return coin.bit(); }
  BitVector m0_, m1_;
};

class RandomGuess : public IndStrategy {
 public:
  std::pair<BitVector, BitVector> choose(IndContext&, KeyOracle&, Rng& rng) override {
    return distinct_messages(rng);
  }
  bool guess(IndContext&, SigKeyPair*, Rng coin) override { return coin.bit(); }
};

// Holds a legitimate key for a circuit that agrees on both messages and
// decrypts honestly.
class HonestKey : public RevealingStrategy {
 public:
  std::pair<BitVector, BitVector> choose(IndContext& ctx, KeyOracle& oracle, Rng& rng) override {
    const auto c = BooleanCircuit(4, {Gate{GateOp::And, 0, 1}}, {4});
    do {
      std::tie(m0_, m1_) = distinct_messages(rng);
    } while (c.eval(m0_) != c.eval(m1_));
    const auto sk = oracle(c);
    x_ = cbqsfe_key_input(sk, ctx.params);
    plan_measure(x_, ctx.params);
    return {m0_, m1_};
  }

 protected:
  // C(m_0) = C(m_1), so the honest output says nothing about b.
  bool fallback(IndContext& ctx, Rng& coin) override {
    (void)try_eval(ctx, x_);
    return coin.bit();
  }
  BitVector x_;
};

// Queries a circuit that separates the messages. Always wins the guess and
// is always disqualified.
class Disqualified : public IndStrategy {
 public:
  std::pair<BitVector, BitVector> choose(IndContext& ctx, KeyOracle& oracle, Rng& rng) override {
    std::tie(m0_, m1_) = distinct_messages(rng);
    k_ = first_difference(m0_, m1_);
    x_ = cbqsfe_key_input(oracle(pass_circuit(k_)), ctx.params);
    plan_measure(x_, ctx.params);
    return {m0_, m1_};
  }
  bool guess(IndContext& ctx, SigKeyPair*, Rng coin) override {
    const auto y = try_eval(ctx, x_);
    if (!y || !y->get(0)) return coin.bit();
    return y->get(1) == m1_.get(k_);
  }

 private:
  BitVector m0_, m1_, x_;
  std::size_t k_ = 0;
};

// Measures along a legitimate (non-separating) key but stores s qubits in
// the blocks where the separating circuit's encoding differs, hoping to
// open those wires after the signing key is revealed.
class StoreMeasure : public RevealingStrategy {
 public:
  std::pair<BitVector, BitVector> choose(IndContext& ctx, KeyOracle& oracle, Rng& rng) override {
    const auto& p = ctx.params;
    std::tie(m0_, m1_) = distinct_messages(rng);
    const auto x = cbqsfe_key_input(oracle(const0_circuit()), p);
    plan_measure(x, p);
    const auto target = p.cls.encode(pass_circuit(first_difference(m0_, m1_)));
    std::vector<std::size_t> blocks;
    for (std::size_t i = 0; i < target.size(); ++i)
      if (target.get(i) != x.get(i)) blocks.push_back(i);
    const std::size_t block = p.otp.block_qubits();
    for (std::size_t k = 0; k < p.s && !blocks.empty(); ++k) {
      const std::size_t pos = blocks[k % blocks.size()] * block + k / blocks.size();
      store_.set(pos, true);
      measure_.set(pos, false);
    }
    return {m0_, m1_};
  }
};

// Measures every qubit in the computational basis.
class FixedBasisInd : public RevealingStrategy {
 public:
  std::pair<BitVector, BitVector> choose(IndContext& ctx, KeyOracle&, Rng& rng) override {
    std::tie(m0_, m1_) = distinct_messages(rng);
    plan_measure(BitVector(ctx.params.input_bits()), ctx.params);
    return {m0_, m1_};
  }
};

// ---- forgetting attacks -------------------------------------------------

// Keeps a set of stream positions (a prefix, or everything but a hole).
class PositionForget : public ForgetAttack {
 public:
  void start(const BcsParams& p) override {
    p_ = p;
    kept_ = BitVector(p.stream_bits());
    known_ = BitVector(p.stream_bits());
    count_ = 0;
  }
  void observe(const BitVector& chunk, std::size_t offset) override {
    for (std::size_t b = 0; b < chunk.size(); ++b)
      if (keeps(offset + b)) {
        known_.set(offset + b, true);
        kept_.set(offset + b, chunk.get(b));
        ++count_;
      }
  }
  std::uint64_t stored_bits() const override { return count_; }
  std::vector<bool> full_rows() const override {
    const std::size_t row = p_.row_bits();
    std::vector<bool> full(p_.n + 1);
    for (std::size_t i = 0; i <= p_.n; ++i) full[i] = known_.slice(i * row, row) == BitVector::ones(row);
    return full;
  }
  // Bits of c * M_x that depend only on kept positions are exact; the rest
  // are guessed.
  BitVector guess(const BitVector& code, Rng& rng) const override {
    const std::size_t row = p_.row_bits();
    BitVector out(row);
    for (std::size_t j = 0; j < row; ++j) {
      bool v = false, sure = true;
      for (std::size_t i = 0; i <= p_.n; ++i) {
        if (!code.get(i)) continue;
        const std::size_t k = i * row + j;
        if (!known_.get(k)) sure = false;
        v = v != kept_.get(k);
      }
      out.set(j, sure ? v : rng.bit());
    }
    return out;
  }

 protected:
  virtual bool keeps(std::size_t pos) const = 0;
  BitVector kept_, known_;
  std::uint64_t count_ = 0;
};

class PrefixForget : public PositionForget {
 public:
  std::uint64_t budget(const BcsParams& p) const override { return p.n * p.n; }

 protected:
  bool keeps(std::size_t pos) const override { return pos < p_.n * p_.n; }
};

class FullForget : public PositionForget {
 public:
  std::uint64_t budget(const BcsParams& p) const override { return p.stream_bits(); }

 protected:
  bool keeps(std::size_t) const override { return true; }
};

// Keeps everything except the last u bits of the last row.
class HalfRowForget : public PositionForget {
 public:
  explicit HalfRowForget(std::size_t u) : u_(u) {}
  std::uint64_t budget(const BcsParams& p) const override { return p.stream_bits() - hole(p); }

 protected:
  std::size_t hole(const BcsParams& p) const { return u_ ? std::min(u_, p.row_bits()) : p.n; }
  bool keeps(std::size_t pos) const override {
    const std::size_t end = (p_.n + 1) * p_.row_bits();
    return pos >= end || pos < end - hole(p_);
  }
  std::size_t u_;
};

Registry<OtAttackFactory>& ot_registry() {
  static Registry<OtAttackFactory> r{{
      {"honest", [] { return std::make_unique<HonestOt>(); }},
      {"fixed-basis", [] { return std::make_unique<FixedBasisOt>(); }},
      {"random-basis", [] { return std::make_unique<RandomBasisOt>(); }},
      {"s-storage", [] { return std::make_unique<StorageOt>(); }},
  }};
  return r;
}

Registry<IndStrategyFactory>& ind_registry() {
  static Registry<IndStrategyFactory> r{{
      {"random-guess", [] { return std::make_unique<RandomGuess>(); }},
      {"honest-key", [] { return std::make_unique<HonestKey>(); }},
      {"disqualified", [] { return std::make_unique<Disqualified>(); }},
      {"store-s-measure-rest", [] { return std::make_unique<StoreMeasure>(); }},
      {"fixed-basis", [] { return std::make_unique<FixedBasisInd>(); }},
  }};
  return r;
}

Registry<ForgetAttackFactory>& forget_registry() {
  static Registry<ForgetAttackFactory> r{{
      {"prefix", [](const ExperimentSpec&) { return std::make_unique<PrefixForget>(); }},
      {"full", [](const ExperimentSpec&) { return std::make_unique<FullForget>(); }},
      {"half-row",
       [](const ExperimentSpec& s) { return std::make_unique<HalfRowForget>(static_cast<std::size_t>(param(s, "u", 0))); }},
  }};
  return r;
}

// Substream ids beyond the protocol parties.
constexpr std::uint64_t kCoinStream = 7;

}  // namespace

void IndStrategy::after_bound(IndContext& ctx, Rng& rng) {
  const std::size_t block = ctx.params.otp.block_qubits();
  const BitVector stored = ctx.outcome->stored();
  const auto words = stored.words();
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::uint64_t m = words[w]; m != 0; m &= m - 1) {
      const std::size_t i = 64 * w + static_cast<std::size_t>(std::countr_zero(m));
      ctx.bits.set(i, ctx.outcome->measure_stored(i, ctx.classical->wires[i / block].theta.get(i % block), rng));
    }
}

DecisionMask IndStrategy::decide(std::size_t begin, std::size_t count, Rng&) {
  if (measure_.size() < begin + count) {
    measure_.resize(begin + count);
    store_.resize(begin + count);
    basis_.resize(begin + count);
  }
  return DecisionMask{measure_.slice(begin, count), store_.slice(begin, count), basis_.slice(begin, count)};
}

void IndStrategy::plan_measure(const BitVector& x, const CbqsParams& p) {
  const std::size_t block = p.otp.block_qubits(), n = x.size() * block;
  measure_ = BitVector::ones(n);
  store_ = BitVector(n);
  basis_ = BitVector(n);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.get(i))
      for (std::size_t k = 0; k < block; ++k) basis_.set(i * block + k, true);
}

CbqsFuncKey KeyOracle::operator()(const BooleanCircuit& c) {
  queries_.push_back(c);
  return cbqsfe_keygen(keys_, p_, c);
}

void register_ot_attack(const std::string& id, OtAttackFactory f) { ot_registry().items[id] = std::move(f); }
void register_ind_strategy(const std::string& id, IndStrategyFactory f) { ind_registry().items[id] = std::move(f); }
void register_forget_attack(const std::string& id, ForgetAttackFactory f) {
  forget_registry().items[id] = std::move(f);
}
std::vector<std::string> ot_attack_ids() { return ot_registry().ids(); }
std::vector<std::string> ind_strategy_ids() { return ind_registry().ids(); }
std::vector<std::string> forget_attack_ids() { return forget_registry().ids(); }

ExperimentResult run_ot_sender_security(const ExperimentSpec& spec, Transcript* t) {
  check_params(spec, {"l", "s", "m", "enforce"});
  OtParams p;
  p.ell = static_cast<std::size_t>(param(spec, "l", 8));
  p.s = static_cast<std::size_t>(param(spec, "s", 32));
  p.m = static_cast<std::size_t>(param(spec, "m", static_cast<std::int64_t>(ot_min_qubits(p.ell, p.s))));
  p.enforce = param(spec, "enforce", 1) != 0;
  require(!p.enforce || ot_params_secure(p), Errc::insecure_parameters,
          "m below 16l+8s; pass enforce=0 for a contrast run");
  const auto& factory = ot_registry().get(spec.strategy, "OT");
  const auto honest_before = honest_violation_total();
  std::uint64_t wins = 0, own = 0, violations = 0, stored_peak = 0;
  for (std::uint64_t trial = 0; trial < spec.trials; ++trial) {
    Rng srng = Rng::derive(spec.seed, Stream::sender, trial);
    Rng arng = Rng::derive(spec.seed, Stream::adversary, trial);
    const auto s0 = BitVector::random(p.ell, srng), s1 = BitVector::random(p.ell, srng);
    OtSender sender(p, srng);
    QuantumMessage msg(1);
    sender.prepare(msg);
    msg.add_bound_marker();
    auto attack = factory();
    attack->start(p, arng);
    Ledger ledger("ot-adversary", p.s, Party::adversary, "qubits");
    auto out = Channel().transmit(std::move(msg), *attack, ledger, arng);
    const auto ann = sender.announce(s0, s1);
    const auto g = attack->guess(ann, out, arng);
    wins += g.other == (g.declared ? s0 : s1);
    own += g.own == (g.declared ? s1 : s0);
    violations += ledger.violations();
    stored_peak = std::max(stored_peak, ledger.peak());
  }
  auto r = make_result(spec, wins);
  r.adversary_violations = violations;
  r.honest_violations = honest_violation_total() - honest_before;
  r.extra = {{"l", p.ell},       {"s", p.s},           {"m", p.m},
             {"enforce", p.enforce}, {"declared_branch_successes", own}, {"stored_peak", stored_peak},
             {"bound", 2.0 / static_cast<double>(std::uint64_t{1} << p.ell)}};
  emit(t, "experiment", r.to_json());
  return r;
}

ExperimentResult run_ind_game(const ExperimentSpec& spec, Transcript* t) {
  check_params(spec, {"s", "l"});
  CbqsParams p;
  p.s = static_cast<std::size_t>(param(spec, "s", 16));
  p.otp.s = p.s;
  p.otp.label_bits = static_cast<std::size_t>(param(spec, "l", 8));
  const auto& factory = ind_registry().get(spec.strategy, "IND");
  const auto honest_before = honest_violation_total();
  std::uint64_t with_reveal = 0, without_reveal = 0, disqualified = 0, violations = 0;
  // Strategies get distinct guessing coins; the two arms of one game share one.
  std::uint64_t strategy_tag = 0;
  for (unsigned char ch : spec.strategy) strategy_tag = splitmix64(strategy_tag ^ ch);
  for (std::uint64_t game = 0; game < spec.trials; ++game) {
    Rng setup = Rng::derive(spec.seed, Stream::setup, game);
    Rng challenger = Rng::derive(spec.seed, Stream::challenger, game);
    Rng sender = Rng::derive(spec.seed, Stream::sender, game);
    Rng adv = Rng::derive(spec.seed, Stream::adversary, game);
    const std::uint64_t coin = Rng::derive(spec.seed ^ strategy_tag, kCoinStream, game).next();

    // 1. Setup and the hidden bit.
    auto keys = cbqsfe_setup(p, setup);
    const bool b = challenger.bit();
    // 2. Key queries and the challenge messages.
    auto strategy = factory();
    IndContext ctx{p, keys.pk(), nullptr, nullptr, {}};
    KeyOracle oracle(keys, p);
    const auto [m0, m1] = strategy->choose(ctx, oracle, adv);
    require(m0.size() == p.cls.n_inputs && m1.size() == p.cls.n_inputs, Errc::shape,
            "challenge messages must match the class input length");
    // 3. The challenge ciphertext; the bound applies after its qubits.
    auto ct = cbqsfe_enc(keys.pk(), b ? m1 : m0, p, sender);
    Ledger ledger("ind-adversary", p.s, Party::adversary, "qubits");
    auto outcome = ct.receive_qubits(*strategy, ledger, adv);
    ctx.classical = &ct.classical();
    ctx.outcome = &outcome;
    ctx.bits = outcome.bits();
    strategy->after_bound(ctx, adv);
    violations += ledger.violations();
    // 4-5. The guess with the signing key revealed, and the same game
    // without the reveal.
    SigKeyPair revealed = keys.mk;
    const bool g_reveal = strategy->guess(ctx, &revealed, Rng(coin));
    const bool g_plain = strategy->guess(ctx, nullptr, Rng(coin));
    // 6. Disqualification.
    bool ok = true;
    for (const auto& c : oracle.queries()) {
      const auto wide = c.with_input_count(p.cls.n_inputs);
      if (wide.eval(m0) != wide.eval(m1)) ok = false;
    }
    disqualified += !ok;
    with_reveal += ok && g_reveal == b;
    without_reveal += ok && g_plain == b;
  }
  auto r = make_result(spec, with_reveal);
  r.adversary_violations = violations;
  r.honest_violations = honest_violation_total() - honest_before;
  const double n = static_cast<double>(spec.trials);
  const double p0 = static_cast<double>(without_reveal) / n;
  const double sigma = std::sqrt(p0 * (1 - p0) / n);
  r.extra = {{"without_reveal", without_reveal},
             {"without_reveal_estimate", p0},
             {"reveal_delta", r.estimate - p0},
             {"sigma", sigma},
             {"disqualified", disqualified},
             {"s", p.s},
             {"l", p.otp.label_bits}};
  emit(t, "experiment", r.to_json());
  return r;
}

ExperimentResult run_forgetting(const ExperimentSpec& spec, Transcript* t) {
  check_params(spec, {"n", "u"});
  BcsParams p;
  p.n = static_cast<std::size_t>(param(spec, "n", 64));
  const auto& factory = forget_registry().get(spec.strategy, "forgetting");
  const auto honest_before = honest_violation_total();
  std::uint64_t wins = 0, violations = 0, peak = 0;
  const std::size_t prefix_rows = (p.n * p.n) / p.row_bits();
  for (std::uint64_t trial = 0; trial < spec.trials; ++trial) {
    Rng setup = Rng::derive(spec.seed, Stream::setup, trial);
    Rng challenger = Rng::derive(spec.seed, Stream::challenger, trial);
    Rng adv = Rng::derive(spec.seed, Stream::adversary, trial);
    auto keys = bcsfe_keygen(p, setup);
    BitStream adversary_copy = keys.mk;
    auto attack = factory(spec);
    attack->start(p);
    Ledger ledger("bcs-adversary", attack->budget(p), Party::adversary, "bits");
    stream_fold(
        adversary_copy, 0,
        [&](int&, const BitVector& chunk, std::size_t off) { attack->observe(chunk, off); },
        [&](const int&) { return attack->stored_bits(); }, ledger);
    violations += ledger.violations();
    peak = std::max(peak, ledger.peak());

    // Rows the adversary does not hold in full; an adversary holding all
    // rows faces the same challenge as one holding the n^2-bit prefix.
    auto full = attack->full_rows();
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i <= p.n; ++i)
      if (!full[i]) targets.push_back(i);
    if (targets.empty())
      for (std::size_t i = prefix_rows; i <= p.n; ++i) targets.push_back(i);
    BitVector code = BitVector::random(p.code_bits(), challenger);
    code.set(targets[challenger.below(targets.size())], true);

    Ledger honest("bcs-challenger", p.fk_memory(), Party::honest, "bits");
    const auto truth = bcsfe_fk_receive(keys.mk, code, p, honest);
    wins += attack->guess(code, adv) == truth;
  }
  auto r = make_result(spec, wins);
  r.adversary_violations = violations;
  r.honest_violations = honest_violation_total() - honest_before;
  r.extra = {{"n", p.n}, {"stream_bits", p.stream_bits()}, {"adversary_peak", peak}};
  emit(t, "experiment", r.to_json());
  return r;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, Transcript* t) {
  if (spec.scenario == "cbqs-ind") return run_ind_game(spec, t);
  if (spec.scenario == "ot-sender") return run_ot_sender_security(spec, t);
  if (spec.scenario == "bcs-forget") return run_forgetting(spec, t);
  fail(Errc::usage, "unknown scenario '" + spec.scenario + "'");
}

std::string summary_table(const std::vector<ExperimentResult>& results) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-22s %8s %9s %9s  %-21s %s\n", "scenario", "strategy", "trials",
                "successes", "estimate", "wilson95", "adv_viol");
  os << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-12s %-22s %8llu %9llu %9.5f  [%8.6f, %8.6f] %llu\n", r.scenario.c_str(),
                  r.strategy.c_str(), static_cast<unsigned long long>(r.trials),
                  static_cast<unsigned long long>(r.successes), r.estimate, r.ci.lo, r.ci.hi,
                  static_cast<unsigned long long>(r.adversary_violations));
    os << line;
  }
  return os.str();
}

}  // namespace bsfe
