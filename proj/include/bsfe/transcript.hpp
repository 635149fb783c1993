#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace bsfe {

inline constexpr int kTranscriptVersion = 1;

// JSONL event log. Each line is {"v", "t", "ev", ...fields} with keys sorted,
// so equal runs produce byte-identical logs. Components take a nullable
// pointer and skip logging when it is null.
class Transcript {
 public:
  void emit(std::string_view ev, nlohmann::json fields = nlohmann::json::object());

  std::uint64_t tick() const { return tick_; }
  void set_tick(std::uint64_t t) { tick_ = t; }
  void advance(std::uint64_t dt = 1) { tick_ += dt; }

  const std::string& text() const { return text_; }
  std::size_t events() const { return events_; }
  void clear();

 private:
  std::uint64_t tick_ = 0;
  std::size_t events_ = 0;
  std::string text_;
};

inline void emit(Transcript* t, std::string_view ev,
                 nlohmann::json fields = nlohmann::json::object()) {
  if (t != nullptr) t->emit(ev, std::move(fields));
}

}  // namespace bsfe
