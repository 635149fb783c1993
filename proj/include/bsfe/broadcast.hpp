#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsfe/ledger.hpp"
#include "bsfe/program.hpp"
#include "bsfe/transcript.hpp"

namespace bsfe {

// How honest memory and the adversary budget count the output: one unit per
// output symbol (field element), or one per output bit.
enum class BroadcastUnits { symbols, bits };

struct BroadcastConfig {
  BroadcastUnits units = BroadcastUnits::symbols;
  // Output bits below this make 2^-m_out non-negligible; setup records a
  // warning but proceeds.
  std::size_t negligible_bits = 16;
};

// Ideal (q, s, 2, k) program broadcast: anyone can evaluate while the
// window is open, honest parties pay 12 units of quantum memory per output
// unit for the duration of an evaluation, and an s-qubit adversary gets
// k = floor(s / 2m_out) evaluations in total.
class BroadcastHandle {
 public:
  BroadcastHandle(Program p, std::size_t s, std::uint64_t t_end, std::size_t symbol_bits,
                  const BroadcastConfig& cfg = {}, Transcript* t = nullptr);

  BitVector eval(const BitVector& x, Party party, Ledger* ledger = nullptr);
  // Move the logical clock; the window closes once now >= t_end.
  void tick(std::uint64_t now);
  void close();

  std::size_t output_units() const { return m_out_; }
  std::uint64_t honest_charge() const { return 12 * m_out_; }
  std::size_t adversary_budget() const { return budget_; }
  std::size_t adversary_evals() const { return adversary_evals_; }
  std::size_t honest_evals() const { return honest_evals_; }
  int bound_markers() const { return 2; }
  bool window_open() const { return open_; }
  std::uint64_t t_end() const { return t_end_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Program program_;
  std::size_t s_;
  std::uint64_t t_end_;
  std::size_t m_out_;
  std::size_t budget_;
  std::size_t adversary_evals_ = 0;
  std::size_t honest_evals_ = 0;
  bool open_ = true;
  Transcript* transcript_;
  std::vector<std::string> warnings_;
};

// k = floor(s / (2 m_out)).
std::size_t broadcast_budget(std::size_t s, std::size_t m_out);

BroadcastHandle br_setup(Program p, std::size_t s, std::uint64_t t_end, std::size_t symbol_bits = 1,
                         const BroadcastConfig& cfg = {}, Transcript* t = nullptr);
BitVector br_eval(BroadcastHandle& h, const BitVector& x, Party party, Ledger* ledger = nullptr);

}  // namespace bsfe
