#include "bsfe/toeplitz.hpp"

#include <bit>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

std::size_t seed_len(std::size_t in_len, std::size_t out_len) {
  return in_len + out_len == 0 ? 0 : in_len + out_len - 1;
}

}  // namespace

ToeplitzHash::ToeplitzHash(std::size_t in_len, std::size_t out_len, BitVector seed)
    : in_len_(in_len), out_len_(out_len), seed_(std::move(seed)) {
  require(seed_.size() == seed_len(in_len, out_len), Errc::shape,
          "toeplitz seed must have in_len + out_len - 1 bits");
}

ToeplitzHash ToeplitzHash::random(std::size_t in_len, std::size_t out_len, Rng& rng) {
  return ToeplitzHash(in_len, out_len, BitVector::random(seed_len(in_len, out_len), rng));
}

BitVector ToeplitzHash::operator()(const BitVector& input) const {
  require(input.size() == in_len_, Errc::shape,
          "hash expects " + std::to_string(in_len_) + " input bits, got " +
              std::to_string(input.size()));
  BitVector out(out_len_);
  if (in_len_ == 0) return out;
  // Row j of the matrix is seed[j .. j+in_len).
  const auto s = seed_.words();
  const auto x = input.words();
  auto window = [&](std::size_t bit) {
    const std::size_t base = bit >> 6, shift = bit & 63;
    std::uint64_t w = s[base] >> shift;
    if (shift != 0 && base + 1 < s.size()) w |= s[base + 1] << (64 - shift);
    return w;
  };
  for (std::size_t j = 0; j < out_len_; ++j) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < x.size(); ++k) acc ^= window(j + 64 * k) & x[k];
    if (std::popcount(acc) & 1) out.set(j, true);
  }
  return out;
}

BitVector toeplitz_hash(const ToeplitzHash& h, const BitVector& input) { return h(input); }

}  // namespace bsfe
