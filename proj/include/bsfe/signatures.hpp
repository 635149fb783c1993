#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bsfe/bits.hpp"
#include "bsfe/circuit.hpp"
#include "bsfe/rng.hpp"

namespace bsfe {

// Toy sponge: 64-bit state (L, R), 32-bit rate. The state starts as
// (IV, message length), each 32-bit block is XORed into L and followed by a
// Simon-style Feistel permutation, and the digest is the first out_bits of
// L || R. Small enough to garble; not a real hash.
struct ToyHash {
  std::size_t out_bits = 64;  // 1..64
  std::size_t rounds = 8;

  BitVector operator()(const BitVector& msg) const;
  // Same function as circuit wires; msg.size() fixes the length.
  std::vector<Wire> build(CircuitBuilder& b, const std::vector<Wire>& msg) const;
  BooleanCircuit circuit(std::size_t msg_bits) const;
};

struct SigParams {
  std::size_t hash_bits = 64;  // digest and preimage length
  std::size_t rounds = 8;
  std::size_t max_sigs = 4;

  ToyHash hash() const { return ToyHash{hash_bits, rounds}; }
  std::size_t slot_bits() const;
  // Signed length: slot index, then one preimage per digest bit.
  std::size_t signature_bits() const { return slot_bits() + hash_bits * hash_bits; }
};

struct VerifyKey {
  SigParams params;
  // vk[slot][j][b] = H(sk[slot][j][b]).
  std::vector<std::vector<std::array<BitVector, 2>>> slots;
  std::size_t hash_count() const { return slots.size() * params.hash_bits * 2; }
};

struct Signature {
  std::size_t slot = 0;
  std::vector<BitVector> preimages;  // one per digest bit

  BitVector to_bits(const SigParams& p) const;
  static Signature from_bits(const BitVector& bits, const SigParams& p);
};

// Hash-then-sign with one Lamport key per slot. Signing the digest of the
// message keeps keys at hash_bits pairs regardless of message length.
class SigKeyPair {
 public:
  SigKeyPair(const SigParams& p, Rng& rng);

  Signature sign(const BitVector& msg);
  const VerifyKey& vk() const { return vk_; }
  std::size_t next_slot() const { return next_; }
  std::size_t remaining() const { return vk_.params.max_sigs - next_; }

 private:
  std::vector<std::vector<std::array<BitVector, 2>>> sk_;
  VerifyKey vk_;
  std::size_t next_ = 0;
};

SigKeyPair sig_keygen(const SigParams& p, Rng& rng);
bool sig_verify(const VerifyKey& vk, const BitVector& msg, const Signature& sig);

// Verification as wires: msg and sig (in to_bits layout) are circuit wires,
// vk is baked in as constants. Returns the accept bit.
Wire build_verify(CircuitBuilder& b, const VerifyKey& vk, const std::vector<Wire>& msg,
                  const std::vector<Wire>& sig);
// Stand-alone circuit over msg || sig.
BooleanCircuit verify_circuit(const VerifyKey& vk, std::size_t msg_bits);

}  // namespace bsfe
