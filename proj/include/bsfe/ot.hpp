#pragma once

#include <optional>

#include "bsfe/bits.hpp"
#include "bsfe/channel.hpp"
#include "bsfe/rng.hpp"
#include "bsfe/toeplitz.hpp"
#include "bsfe/transcript.hpp"

namespace bsfe {

struct OtParams {
  std::size_t m = 384;   // qubits
  std::size_t ell = 8;   // string length
  std::size_t s = 32;    // adversary quantum memory
  // Off only for contrast experiments that deliberately break the bound.
  bool enforce = true;
};

// m/4 - 2*ell - s >= m/8, i.e. m >= 16*ell + 8*s.
bool ot_params_secure(const OtParams& p);
std::size_t ot_min_qubits(std::size_t ell, std::size_t s);
OtParams ot_params_for(std::size_t ell, std::size_t s);

struct OtAnnouncement {
  BitVector theta;
  ToeplitzHash f0;
  ToeplitzHash f1;
  BitVector e0;
  BitVector e1;
  // e_b = f_b(x|I_b) xor s_b with I_b = {i : theta_i = b}.
  BitVector mask(bool b) const { return b ? theta : ~theta; }
};

class OtSender {
 public:
  OtSender(const OtParams& params, Rng& rng);

  // Append this transfer's m qubits to `msg`. Bound markers are the
  // caller's business so several transfers can share one.
  std::size_t prepare(QuantumMessage& msg);
  // Sent after the bound: theta, fresh hashes, masked strings. The strings
  // may be chosen as late as this point.
  OtAnnouncement announce(const BitVector& s0, const BitVector& s1, Transcript* t = nullptr);

  const OtParams& params() const { return params_; }

 private:
  OtParams params_;
  BitVector x_, theta_;
  Rng& rng_;
  bool prepared_ = false;
};

// y = e_c xor f_c(x'|I_c) from the receiver's measured bits for this block.
BitVector ot_receive(bool c, const BitVector& measured_bits, const OtAnnouncement& ann);

struct OtRun {
  BitVector y;
  std::uint64_t receiver_peak = 0;
};

// One complete honest execution with separate sender/receiver logs.
OtRun run_ot(const OtParams& params, const BitVector& s0, const BitVector& s1, bool c,
             Rng& sender_rng, Rng& receiver_rng, Transcript* sender_log = nullptr,
             Transcript* receiver_log = nullptr);

}  // namespace bsfe
