#include "bsfe/error.hpp"

namespace bsfe {

std::string_view errc_tag(Errc code) noexcept {
  switch (code) {
    case Errc::usage: return "usage";
    case Errc::shape: return "shape";
    case Errc::field: return "field";
    case Errc::consumed: return "consumed";
    case Errc::insecure_parameters: return "insecure parameters";
    case Errc::invalid_labels: return "invalid labels";
    case Errc::budget_exhausted: return "budget exhausted";
    case Errc::expired: return "expired";
    case Errc::schedule: return "schedule";
    case Errc::parameter: return "parameter";
    case Errc::key_depleted: return "stateful key depleted";
    case Errc::class_bound: return "class bound exceeded";
    case Errc::syntax: return "syntax";
    case Errc::cycle: return "cycle/undefined wire";
    case Errc::state: return "protocol state";
    case Errc::ledger_violation: return "ledger violation";
    case Errc::io: return "io";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

namespace {
std::string compose(Errc code, std::string_view detail) {
  std::string msg(errc_tag(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}
}  // namespace

Error::Error(Errc code, std::string_view detail)
    : std::runtime_error(compose(code, detail)), code_(code) {}

}  // namespace bsfe
