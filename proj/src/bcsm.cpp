#include "bsfe/bcsm.hpp"

#include <algorithm>
#include <cmath>

namespace bsfe {

BitStream::BitStream(BitVector data, std::size_t chunk_bits) : data_(std::move(data)), chunk_bits_(chunk_bits) {
  require(chunk_bits > 0, Errc::parameter, "chunk size must be positive");
}

BitStream BitStream::filler(std::size_t total_bits, std::size_t chunk_bits) {
  return BitStream(BitVector(total_bits), chunk_bits);
}

BitStream::Reader BitStream::read(Transcript* t) {
  require(!started_, Errc::consumed, "stream has already been traversed");
  started_ = true;
  emit(t, "stream_begin", {{"bits", data_.size()}, {"chunk", chunk_bits_}, {"chunks", chunk_count()}});
  return Reader(*this, t);
}

std::optional<BitVector> BitStream::Reader::next() {
  const auto& data = s_->data_;
  if (pos_ >= data.size()) return std::nullopt;
  const std::size_t len = std::min(s_->chunk_bits_, data.size() - pos_);
  auto chunk = data.slice(pos_, len);
  pos_ += len;
  emit(t_, "chunk", {{"offset", pos_ - len}, {"bits", len}});
  if (pos_ == data.size() && s_->on_end_) {
    auto fn = std::move(s_->on_end_);
    s_->on_end_ = nullptr;
    fn();
  }
  return chunk;
}

std::uint64_t wgb_query_budget(std::size_t lambda) {
  auto e = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(lambda))));
  return std::uint64_t{1} << std::min<std::uint64_t>(e, 20);
}

WgbHandle::WgbHandle(Program p, std::uint64_t query_budget, Transcript* t)
    : state_(std::make_shared<State>(State{std::move(p), query_budget, 0, true, t})) {}

BitVector WgbHandle::eval(const BitVector& x) {
  auto& s = *state_;
  require(s.open, Errc::expired, "obfuscation window has closed");
  require(s.queries < s.budget, Errc::budget_exhausted, "obfuscation query budget exhausted");
  ++s.queries;
  auto y = s.program(x);
  emit(s.transcript, "wgb_eval", {{"query", s.queries}, {"budget", s.budget}});
  return y;
}

void WgbHandle::close_window() { state_->open = false; }

WgbObfuscation wgb_obfuscate(Program p, std::size_t stream_bits, std::size_t lambda, Transcript* t,
                             std::size_t chunk_bits) {
  WgbObfuscation obf{BitStream::filler(stream_bits, chunk_bits), WgbHandle(std::move(p), wgb_query_budget(lambda), t)};
  obf.stream.on_end([h = obf.handle]() mutable { h.close_window(); });
  return obf;
}

BitVector wgb_eval(WgbHandle& h, const BitVector& x) { return h.eval(x); }

}  // namespace bsfe
