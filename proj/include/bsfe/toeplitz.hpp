#pragma once

#include "bsfe/bits.hpp"
#include "bsfe/rng.hpp"

namespace bsfe {

// Two-universal hash h(x)[j] = XOR_k seed[j+k] * x[k]: the out_len x in_len
// Toeplitz matrix whose diagonals are the seed bits.
class ToeplitzHash {
 public:
  ToeplitzHash(std::size_t in_len, std::size_t out_len, BitVector seed);
  static ToeplitzHash random(std::size_t in_len, std::size_t out_len, Rng& rng);

  std::size_t in_len() const { return in_len_; }
  std::size_t out_len() const { return out_len_; }
  const BitVector& seed() const { return seed_; }

  BitVector operator()(const BitVector& input) const;

 private:
  std::size_t in_len_;
  std::size_t out_len_;
  BitVector seed_;
};

BitVector toeplitz_hash(const ToeplitzHash& h, const BitVector& input);

}  // namespace bsfe
