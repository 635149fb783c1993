#pragma once

#include <optional>

#include "bsfe/circuit.hpp"
#include "bsfe/otp.hpp"
#include "bsfe/signatures.hpp"

namespace bsfe {

// Circuits with up to n_inputs inputs, at most max_gates gates and
// n_outputs outputs (one in the scheme proper), in the fixed-width
// gate-list encoding. Encodings are padded to exactly max_gates gates
// (extra CONST0 gates) so every field sits at a fixed offset.
struct GateListClass {
  std::size_t n_inputs = 4;
  std::size_t max_gates = 8;
  std::size_t n_outputs = 1;

  std::size_t w() const { return encoded_size(max_gates, n_outputs); }
  bool contains(const BooleanCircuit& c) const;
  BitVector encode(const BooleanCircuit& c) const;
};

// Evaluates the encoded circuit on the constant input mu.
std::vector<Wire> build_universal_eval(CircuitBuilder& b, const GateListClass& cls, const BitVector& mu,
                                       const std::vector<Wire>& enc);

struct CbqsParams {
  std::size_t s = 16;
  OtpParams otp{16, 8, 32};
  SigParams sig{32, 4, 4};
  GateListClass cls{};

  std::size_t input_bits() const { return cls.w() + sig.signature_bits(); }
};

struct CbqsKeys {
  SigKeyPair mk;
  const VerifyKey& pk() const { return mk.vk(); }
};

struct CbqsFuncKey {
  BooleanCircuit c;
  BitVector c_enc;
  Signature sigma;
};

CbqsKeys cbqsfe_setup(const CbqsParams& p, Rng& rng, Transcript* t = nullptr);
CbqsFuncKey cbqsfe_keygen(CbqsKeys& keys, const CbqsParams& p, const BooleanCircuit& c);

// P_{pk,mu}(enc, sigma) = [1, C(mu)] if sigma verifies on enc, else all
// zeros.
BooleanCircuit cbqsfe_program_circuit(const VerifyKey& pk, const BitVector& mu, const CbqsParams& p);
OtpTransmission cbqsfe_enc(const VerifyKey& pk, const BitVector& mu, const CbqsParams& p, Rng& rng,
                           Transcript* t = nullptr);
// Encrypt a precompiled program circuit (the circuit depends only on pk, mu).
OtpTransmission cbqsfe_enc_circuit(const BooleanCircuit& program, const CbqsParams& p, Rng& rng,
                                   Transcript* t = nullptr);
BitVector cbqsfe_key_input(const CbqsFuncKey& sk, const CbqsParams& p);
// nullopt is the bottom output.
std::optional<BitVector> cbqsfe_dec(const CbqsFuncKey& sk, OtpTransmission& ct, const CbqsParams& p,
                                    Rng& rng, Transcript* t = nullptr);

}  // namespace bsfe
