#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bsfe/bits.hpp"
#include "bsfe/ledger.hpp"
#include "bsfe/rng.hpp"
#include "bsfe/transcript.hpp"

namespace bsfe {

// Basis bit: 0 = computational (+), 1 = diagonal (x).
inline constexpr bool kRect = false;
inline constexpr bool kDiag = true;

// A single BB84 state |bit>_basis.
class Qubit {
 public:
  Qubit(bool bit, bool basis) : bit_(bit), basis_(basis) {}
  bool consumed() const { return consumed_; }

 private:
  friend bool measure(Qubit& q, bool basis, Rng& rng);
  bool bit_;
  bool basis_;
  bool consumed_ = false;
};

// Matching basis returns the encoded bit; otherwise a fresh uniform bit.
bool measure(Qubit& q, bool basis, Rng& rng);

// A train of BB84 states with "memory bound applies" markers. Marker k at
// position p fires after qubit p-1 has been delivered.
class QuantumMessage {
 public:
  explicit QuantumMessage(std::size_t max_markers = 1) : max_markers_(max_markers) {}

  // Append a block; returns the index of its first qubit.
  std::size_t append(const BitVector& bits, const BitVector& bases);
  void add_bound_marker();

  std::size_t size() const { return bits_.size(); }
  const std::vector<std::size_t>& bound_markers() const { return markers_; }
  std::size_t max_markers() const { return max_markers_; }

 private:
  friend class Channel;
  BitVector bits_;
  BitVector bases_;
  std::vector<std::size_t> markers_;
  std::size_t max_markers_;
};

// Per-qubit choices for a range. A qubit is measured (in `basis`), stored,
// or, when neither mask bit is set, discarded.
struct DecisionMask {
  BitVector measure;
  BitVector store;
  BitVector basis;
  static DecisionMask measure_all(std::size_t n, const BitVector& basis);
};

// Product measure-or-store receiver. Strategies see positions, never states.
class ReceiverStrategy {
 public:
  virtual ~ReceiverStrategy() = default;
  virtual DecisionMask decide(std::size_t begin, std::size_t count, Rng& rng) = 0;
};

// Measure qubit i in basis[i].
class BasisStrategy : public ReceiverStrategy {
 public:
  explicit BasisStrategy(BitVector basis) : basis_(std::move(basis)) {}
  DecisionMask decide(std::size_t begin, std::size_t count, Rng& rng) override;

 private:
  BitVector basis_;
};

// What the receiver ends up with. Stored qubits stay opaque until measured.
class ReceiverOutcome {
 public:
  const BitVector& measured() const { return measured_; }
  const BitVector& bits() const { return bits_; }
  const BitVector& basis() const { return basis_; }
  const BitVector& stored() const { return stored_; }
  std::size_t stored_count() const { return stored_.popcount(); }

  // Measure a stored qubit now (after announcements). Frees its memory.
  bool measure_stored(std::size_t i, bool basis, Rng& rng);

 private:
  friend class Channel;
  BitVector measured_;
  BitVector bits_;
  BitVector basis_;
  BitVector stored_;
  // Hidden state of stored qubits.
  BitVector held_bits_;
  BitVector held_bases_;
  Ledger* ledger_ = nullptr;
};

class Channel {
 public:
  explicit Channel(Transcript* transcript = nullptr) : transcript_(transcript) {}

  // Deliver every qubit in order; decisions are requested per segment
  // between bound markers, and each marker triggers apply_bound.
  ReceiverOutcome transmit(QuantumMessage msg, ReceiverStrategy& receiver, Ledger& ledger,
                           Rng& rng);

 private:
  Transcript* transcript_;
};

// Bound event: unstored qubits are already gone; stored count is checked.
bool apply_bound(Ledger& ledger, Transcript* transcript = nullptr);

}  // namespace bsfe
