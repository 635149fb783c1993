#include "bsfe/rng.hpp"

namespace bsfe {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::derive(std::uint64_t seed, Stream stream, std::uint64_t counter) {
  return derive(seed, static_cast<std::uint64_t>(stream), counter);
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  std::uint64_t k = splitmix64(seed);
  k = splitmix64(k ^ (stream * 0xd1b54a32d192ed03ULL));
  k = splitmix64(k ^ (counter * 0xabc98388fb8fac03ULL));
  return Rng(k);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

}  // namespace bsfe
