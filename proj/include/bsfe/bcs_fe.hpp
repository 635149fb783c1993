#pragma once

#include <optional>
#include <vector>

#include "bsfe/bcsm.hpp"
#include "bsfe/bqs_fe.hpp"

namespace bsfe {

// Streaming functional encryption in the bounded classical storage model.
//
// The master stream is rows x_0..x_n of width 2n+1 followed by v_I in
// {0,1}^{n+1}. M_x has x_i as row i, so a function code c in {0,1}^{n+1}
// selects the key sk_C = c * M_x (XOR of the rows picked by c), and the
// master secret is sk = v_I * M_x.
//
// Function codes: bits 0-1 are a kind tag, the payload follows, the rest is
// zero. Tag 0 is a circuit (payload = truth table, applied to the message),
// tag 1 is U_x (payload = x, applied to a message that is itself a truth
// table). The all-ones code is reserved for the identity.
struct BcsParams {
  std::size_t n = 64;
  std::size_t lambda = 32;
  TruthTableClass cls{};
  std::size_t chunk_bits = kDefaultChunkBits;

  std::size_t row_bits() const { return 2 * n + 1; }
  std::size_t code_bits() const { return n + 1; }
  // Longest code payload.
  std::size_t ell() const { return std::max(cls.w(), cls.n_inputs); }
  std::size_t stream_bits() const { return (n + 1) * row_bits() + (n + 1); }

  // Honest memory, in bits. Distributor: sk, v_I and one word in flight.
  // EkReceive: V, W and v_I. FkReceive: the code and the running key.
  std::uint64_t distributor_memory() const;
  std::uint64_t ek_memory() const { return (n + 1 + row_bits()) * lambda + (n + 1); }
  std::uint64_t fk_memory(std::size_t keys = 1) const { return keys * (code_bits() + row_bits()); }

  // ell < n (the two tag bits then fit in n+1), lambda >= 1.
  void validate() const;
};

struct BcsKeys {
  BitStream mk;
  BitVector sk;
};

struct BcsEncKey {
  BitMatrix W;  // (n+1) x lambda, row i = x_i * V
  BitMatrix V;  // (2n+1) x lambda
  BitVector v_I;
};

// The distributor generates the stream word by word and keeps only sk and
// v_I. Its memory is metered on `distributor` when given.
BcsKeys bcsfe_keygen(const BcsParams& p, Rng& rng, Ledger* distributor = nullptr, Transcript* t = nullptr);

BcsEncKey bcsfe_ek_receive(BitStream& mk, const BcsParams& p, Rng& rng, Ledger& ledger, Transcript* t = nullptr);
// With a caller-chosen V ((2n+1) x lambda).
BcsEncKey bcsfe_ek_receive(BitStream& mk, const BcsParams& p, BitMatrix V, Ledger& ledger, Transcript* t = nullptr);
// One pass computing a key per code.
std::vector<BitVector> bcsfe_fk_receive(BitStream& mk, const std::vector<BitVector>& codes, const BcsParams& p,
                                        Ledger& ledger, Transcript* t = nullptr);
BitVector bcsfe_fk_receive(BitStream& mk, const BitVector& code, const BcsParams& p, Ledger& ledger,
                           Transcript* t = nullptr);

BitVector bcs_circuit_code(const BooleanCircuit& c, const BcsParams& p);
BitVector bcs_input_code(const BitVector& x, const BcsParams& p);
BitVector bcs_identity_code(const BcsParams& p);

// P_{k_V,mu}(y, c): [1, C(mu)] if y*V = c*W, [1, mu] if c is the identity
// code and y*V = v_I*W, zeros otherwise. Outputs are padded to |mu| bits.
Program bcsfe_program(const BcsEncKey& k, const BitVector& mu, const BcsParams& p);
WgbObfuscation bcsfe_enc(const BcsEncKey& k, const BitVector& mu, const BcsParams& p, Transcript* t = nullptr);

// Reads the ciphertext stream and queries it once per key while the window
// is open. nullopt is the bottom output.
std::vector<std::optional<BitVector>> bcsfe_dec(const std::vector<std::pair<BitVector, BitVector>>& keys,
                                                WgbObfuscation& ct, const BcsParams& p, Transcript* t = nullptr);
std::optional<BitVector> bcsfe_dec(const BitVector& sk_c, const BitVector& code, WgbObfuscation& ct,
                                   const BcsParams& p, Transcript* t = nullptr);

// WGB obfuscation from the FE scheme over the class {U_x}: the message is the
// circuit's truth table and evaluation on x decrypts with the key for U_x.
struct WgbFromFe {
  BcsParams params;
  BitStream mk;
  WgbObfuscation ct;
};

WgbFromFe wgb_from_fe_obfuscate(const BooleanCircuit& c, const BcsParams& p, Rng& rng, Transcript* t = nullptr);
// Several inputs share the single pass over each stream.
std::vector<BitVector> wgb_from_fe_eval(WgbFromFe& obf, const std::vector<BitVector>& xs, Transcript* t = nullptr);
BitVector wgb_from_fe_eval(WgbFromFe& obf, const BitVector& x, Transcript* t = nullptr);

}  // namespace bsfe
