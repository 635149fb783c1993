#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsfe/broadcast.hpp"
#include "bsfe/circuit.hpp"
#include "bsfe/field.hpp"
#include "bsfe/otp.hpp"
#include "bsfe/transcript.hpp"

namespace bsfe {

// Circuits on n inputs with n_out outputs, encoded by their truth table
// (bit x*n_out + j is output j on input x), so w = n_out * 2^n.
struct TruthTableClass {
  std::size_t n_inputs = 4;
  std::size_t n_outputs = 1;

  std::size_t w() const { return n_outputs << n_inputs; }
  bool contains(const BooleanCircuit& c) const;
  // Circuits with fewer inputs are widened with ignored inputs.
  BitVector encode(const BooleanCircuit& c) const;
  // Output j of the encoded circuit on x.
  BitVector apply(const BitVector& tt, const BitVector& x) const;
};

enum class FeBackend { kil, yao };

struct BqsFeParams {
  std::size_t s = 32;
  std::size_t r = 2;
  std::size_t lambda = 8;
  TruthTableClass cls{};
  // Field degree; 0 means max(lambda, w). Must be >= w and <= 64.
  unsigned ell = 0;
  // Declared honest quantum memory in symbol units; 0 means 12m.
  std::uint64_t honest_budget = 0;
  BroadcastConfig broadcast{};
  FeBackend backend = FeBackend::kil;
  OtpParams otp{};
  // Logical time of t_0 and spacing of the schedule.
  std::uint64_t t0 = 0;
  std::uint64_t period = 10;

  // 2*sqrt(s/r) rounded up to an even integer.
  std::size_t m() const;
  unsigned field_degree() const;
  std::uint64_t honest_memory() const { return honest_budget ? honest_budget : 12 * m(); }
  // r < s, w <= ell <= 64, declared honest memory at least sqrt(s/r).
  void validate() const;
};

struct MasterSecret {
  BqsFeParams params;
  FieldMatrix M;
  std::vector<std::uint64_t> T;  // t_0 < ... < t_{2r}
};

struct EncKey {
  BitVector v;
  std::vector<F2kElement> Mv;
};

struct FuncKey {
  F2kElement c_enc;
  std::vector<F2kElement> values;  // values[i] = P_i(c_enc)
};

MasterSecret bqsfe_setup(const BqsFeParams& p, Rng& rng, Transcript* t = nullptr);

// F_i(x) = M[m i : m(i+1), :] x, broadcast in [t_i, t_{i+1}).
BroadcastHandle bqsfe_pk_send(const MasterSecret& msk, std::size_t i, std::uint64_t now,
                              Transcript* t = nullptr);
std::vector<BroadcastHandle> bqsfe_pk_phase(const MasterSecret& msk, Transcript* t = nullptr);
EncKey bqsfe_pk_receive(std::vector<BroadcastHandle>& handles, const BqsFeParams& p, Rng& rng,
                        Ledger& ledger);

// P_[mi : mi+m](x), broadcast in [t_{i+r}, t_{i+1+r}).
BroadcastHandle bqsfe_mk_send(const MasterSecret& msk, std::size_t i, std::uint64_t now,
                              Transcript* t = nullptr);
std::vector<BroadcastHandle> bqsfe_mk_phase(const MasterSecret& msk, Transcript* t = nullptr);
FuncKey bqsfe_mk_receive(std::vector<BroadcastHandle>& handles, const BqsFeParams& p,
                         const BooleanCircuit& c, Ledger& ledger);

// G_{k_v,mu}(tt, y): [1, C(mu)] when the sum of y_i over v_i = 1 equals
// P_v(tt), else all zeros (the first bit is the validity flag).
Program bqsfe_g_program(const EncKey& k, const BitVector& mu, const BqsFeParams& p);
BooleanCircuit bqsfe_g_circuit(const EncKey& k, const BitVector& mu, const BqsFeParams& p);

struct BqsCiphertext {
  FeBackend backend = FeBackend::kil;
  std::optional<KilHandle> kil;
  std::optional<OtpTransmission> yao;
  std::size_t n_outputs = 0;
};

BqsCiphertext bqsfe_enc(const EncKey& k, const BitVector& mu, const BqsFeParams& p, Rng& rng,
                        Transcript* t = nullptr);
// nullopt is the bottom output.
std::optional<BitVector> bqsfe_dec(const FuncKey& sk, BqsCiphertext& ct, const BqsFeParams& p, Rng& rng,
                                   Transcript* t = nullptr);
// Evaluate on an arbitrary (tt, y) input, e.g. an adversary's guess.
std::optional<BitVector> bqsfe_eval_raw(BqsCiphertext& ct, const BitVector& input, Rng& rng,
                                        Transcript* t = nullptr);

// Field multiplication as wires (both operands ell bits).
std::vector<Wire> build_field_mul(CircuitBuilder& b, const Field& f, const std::vector<Wire>& x,
                                  const std::vector<Wire>& y);

struct BqsFeRun {
  std::optional<BitVector> output;
  std::uint64_t pk_peak = 0;
  std::uint64_t mk_peak = 0;
  std::uint64_t honest_violations = 0;
};

// Setup, both broadcast phases, one encryption and one decryption with a
// single honest receiver following the schedule.
BqsFeRun bqsfe_run(const BqsFeParams& p, const BooleanCircuit& c, const BitVector& mu, std::uint64_t seed,
                   Transcript* t = nullptr);

}  // namespace bsfe
