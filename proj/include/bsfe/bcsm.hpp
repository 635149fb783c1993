#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "bsfe/bits.hpp"
#include "bsfe/error.hpp"
#include "bsfe/ledger.hpp"
#include "bsfe/program.hpp"
#include "bsfe/transcript.hpp"

namespace bsfe {

inline constexpr std::size_t kDefaultChunkBits = 64;

// A classical broadcast stream. It is read in fixed-size chunks, in order,
// exactly once; a second traversal is an error. Copies made before reading
// are independent streams (one per receiver).
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(BitVector data, std::size_t chunk_bits = kDefaultChunkBits);
  // Content-free stream of the given declared length.
  static BitStream filler(std::size_t total_bits, std::size_t chunk_bits = kDefaultChunkBits);

  std::size_t total_bits() const { return data_.size(); }
  std::size_t chunk_bits() const { return chunk_bits_; }
  std::size_t chunk_count() const { return (data_.size() + chunk_bits_ - 1) / chunk_bits_; }
  bool consumed() const { return started_; }

  // Called once when the last chunk has been delivered.
  void on_end(std::function<void()> fn) { on_end_ = std::move(fn); }

  class Reader {
   public:
    // Next chunk, or nullopt at the end of the stream.
    std::optional<BitVector> next();
    std::size_t offset() const { return pos_; }

   private:
    friend class BitStream;
    Reader(BitStream& s, Transcript* t) : s_(&s), t_(t) {}
    BitStream* s_;
    Transcript* t_;
    std::size_t pos_ = 0;
  };

  Reader read(Transcript* t = nullptr);

 private:
  BitVector data_;
  std::size_t chunk_bits_ = kDefaultChunkBits;
  bool started_ = false;
  std::function<void()> on_end_;
};

// Single-pass fold. After every chunk the carried state is measured with
// state_bits and recorded on the ledger; honest ledgers flag any overrun
// immediately, adversary ledgers are checked at each chunk boundary (the
// classical bound holds throughout a stream).
template <class State, class Fold, class Measure>
State stream_fold(BitStream& s, State state, Fold fold, Measure state_bits, Ledger& ledger,
                  Transcript* t = nullptr) {
  auto reader = s.read(t);
  while (auto chunk = reader.next()) {
    fold(state, *chunk, reader.offset() - chunk->size());
    ledger.set_current(state_bits(state), "chunk");
    if (ledger.party() == Party::adversary) ledger.check("chunk");
  }
  return state;
}

// 2^ceil(sqrt(lambda)), capped at 2^20.
std::uint64_t wgb_query_budget(std::size_t lambda);

// Ideal disappearing WGB obfuscation: evaluates the hidden program a bounded
// number of times while the transmission window is open.
class WgbHandle {
 public:
  WgbHandle(Program p, std::uint64_t query_budget, Transcript* t = nullptr);

  BitVector eval(const BitVector& x);
  void close_window();

  bool window_open() const { return state_->open; }
  std::uint64_t queries() const { return state_->queries; }
  std::uint64_t query_budget() const { return state_->budget; }
  std::size_t input_bits() const { return state_->program.input_bits; }
  std::size_t output_bits() const { return state_->program.output_bits; }

 private:
  struct State {
    Program program;
    std::uint64_t budget;
    std::uint64_t queries = 0;
    bool open = true;
    Transcript* transcript;
  };
  std::shared_ptr<State> state_;
};

struct WgbObfuscation {
  BitStream stream;
  WgbHandle handle;
};

// The window closes when the stream has been read to the end.
WgbObfuscation wgb_obfuscate(Program p, std::size_t stream_bits, std::size_t lambda, Transcript* t = nullptr,
                             std::size_t chunk_bits = kDefaultChunkBits);
BitVector wgb_eval(WgbHandle& h, const BitVector& x);

}  // namespace bsfe
