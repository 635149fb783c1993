#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsfe {

enum class Errc {
  usage = 1,
  shape,
  field,
  consumed,
  insecure_parameters,
  invalid_labels,
  budget_exhausted,
  expired,
  schedule,
  parameter,
  key_depleted,
  class_bound,
  syntax,
  cycle,
  state,
  ledger_violation,
  io,
  internal,
};

// Short tag that prefixes every message of this kind, e.g. "shape".
std::string_view errc_tag(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string_view detail = {});

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string_view detail = {}) {
  throw Error(code, detail);
}

inline void require(bool ok, Errc code, std::string_view detail = {}) {
  if (!ok) fail(code, detail);
}

}  // namespace bsfe
