#pragma once

#include <optional>
#include <vector>

#include "bsfe/channel.hpp"
#include "bsfe/garble.hpp"
#include "bsfe/ot.hpp"
#include "bsfe/program.hpp"
#include "bsfe/transcript.hpp"

namespace bsfe {

struct OtpParams {
  std::size_t s = 32;          // receiver memory bound
  std::size_t label_bits = 8;  // garbled-input length per bit
  std::size_t tag_bits = 32;

  std::size_t block_qubits() const { return ot_min_qubits(label_bits, s); }
};

struct OtpClassical {
  GarbledCircuit gc;
  // Per input bit i: theta_i and (f_{i,b}, e_{i,b}) for b = 0, 1.
  std::vector<OtAnnouncement> wires;
};

// One-time program built from a garbled circuit whose input labels ride on
// BQS oblivious transfers: n blocks of m qubits, one bound marker after the
// last block, then the classical part.
class OtpTransmission {
 public:
  std::size_t n_inputs() const { return n_inputs_; }
  std::size_t block_qubits() const { return block_; }
  std::size_t qubit_count() const { return n_inputs_ * block_; }
  std::size_t marker_count() const { return marker_count_; }
  std::size_t classical_bits() const;

  // Steps 2 and the bound. May be called once.
  ReceiverOutcome receive_qubits(ReceiverStrategy& receiver, Ledger& ledger, Rng& rng,
                                 Transcript* t = nullptr);
  // Step 4, available only after the qubits were delivered.
  const OtpClassical& classical() const;

 private:
  friend OtpTransmission otp_yao_send(const BooleanCircuit&, const OtpParams&, Rng&, Transcript*);
  std::size_t n_inputs_ = 0;
  std::size_t block_ = 0;
  std::size_t marker_count_ = 0;
  std::optional<QuantumMessage> qubits_;
  OtpClassical classical_;
  bool delivered_ = false;
};

OtpTransmission otp_yao_send(const BooleanCircuit& c, const OtpParams& params, Rng& rng,
                             Transcript* t = nullptr);

struct OtpResult {
  BitVector output;
  std::uint64_t ledger_peak = 0;
};

// Honest evaluation: measure block i in basis x_i, unmask the x_i label of
// every wire, evaluate the garbled circuit.
OtpResult otp_yao_receive(OtpTransmission& t, const BitVector& x, Rng& rng, Transcript* log = nullptr);

// Labels recovered from measured blocks for a chosen input.
std::vector<WireLabel> otp_unmask_labels(const OtpClassical& cl, const BitVector& measured_bits,
                                         const BitVector& x, std::size_t block);

// Ideal one-time program: one evaluation, only while the window is open.
class KilHandle {
 public:
  explicit KilHandle(Program p, Transcript* t = nullptr) : program_(std::move(p)), transcript_(t) {}

  BitVector eval(const BitVector& x);
  void close_window();

  int remaining_evals() const { return remaining_; }
  bool window_open() const { return open_; }
  std::size_t input_bits() const { return program_.input_bits; }
  std::size_t output_bits() const { return program_.output_bits; }

 private:
  Program program_;
  Transcript* transcript_;
  int remaining_ = 1;
  bool open_ = true;
};

KilHandle kil_create(const BooleanCircuit& c, Transcript* t = nullptr);
KilHandle kil_create(Program p, Transcript* t = nullptr);
BitVector kil_eval(KilHandle& h, const BitVector& x);

}  // namespace bsfe
