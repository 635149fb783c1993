#pragma once

#include <cstdint>
#include <random>

namespace bsfe {

// Independent substreams used by protocol parties. Values are part of the
// reproducibility contract: changing them changes every transcript.
enum class Stream : std::uint64_t {
  sender = 1,
  receiver = 2,
  adversary = 3,
  setup = 4,
  channel = 5,
  challenger = 6,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Substream keyed by (seed, stream, counter); distinct keys give
  // statistically independent generators.
  static Rng derive(std::uint64_t seed, Stream stream, std::uint64_t counter = 0);
  static Rng derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter = 0);

  std::uint64_t next() { return engine_(); }
  bool bit() { return (next() >> 63) != 0; }

  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

  // Fresh child generator; advances this one.
  Rng fork() { return Rng(next()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bsfe
