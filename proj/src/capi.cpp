#include "bsfe/bsfe.h"

#include <new>
#include <string>

#include "bsfe/error.hpp"
#include "bsfe/scenarios.hpp"

struct bsfe_config {
  bsfe::Config cfg;
};

struct bsfe_result {
  bsfe::ScenarioOutput out;
  int status = BSFE_OK;
};

namespace {

thread_local std::string g_last_error;

int status_of(bsfe::Errc e) {
  using bsfe::Errc;
  switch (e) {
    case Errc::usage: return BSFE_E_USAGE;
    case Errc::ledger_violation: return BSFE_E_LEDGER;
    case Errc::shape:
    case Errc::field:
    case Errc::parameter: return BSFE_E_PARAMETER;
    case Errc::insecure_parameters: return BSFE_E_INSECURE;
    case Errc::class_bound: return BSFE_E_CLASS;
    case Errc::syntax:
    case Errc::cycle: return BSFE_E_CIRCUIT;
    case Errc::io: return BSFE_E_IO;
    case Errc::consumed:
    case Errc::invalid_labels:
    case Errc::budget_exhausted:
    case Errc::expired:
    case Errc::schedule:
    case Errc::key_depleted:
    case Errc::state: return BSFE_E_PROTOCOL;
    case Errc::internal: return BSFE_E_INTERNAL;
  }
  return BSFE_E_INTERNAL;
}

// Runs f, translating exceptions into status codes.
template <class F>
int guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const bsfe::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BSFE_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BSFE_E_INTERNAL;
  }
}

int finish(bsfe::ScenarioOutput out, bsfe_result** result) {
  auto* r = new bsfe_result{std::move(out)};
  switch (r->out.status) {
    case bsfe::ScenarioStatus::ok: r->status = BSFE_OK; break;
    case bsfe::ScenarioStatus::ledger_violation:
      r->status = BSFE_E_LEDGER;
      g_last_error = "honest ledger violation";
      break;
    case bsfe::ScenarioStatus::check_failed:
      r->status = BSFE_E_CHECK;
      g_last_error = "output disagreed with the reference evaluation";
      break;
  }
  *result = r;
  return r->status;
}

}  // namespace

extern "C" {

const char* bsfe_version(void) { return "0.1.0"; }

const char* bsfe_status_name(int status) {
  switch (status) {
    case BSFE_OK: return "ok";
    case BSFE_E_USAGE: return "usage";
    case BSFE_E_LEDGER: return "ledger_violation";
    case BSFE_E_PARAMETER: return "parameter";
    case BSFE_E_INSECURE: return "insecure_parameters";
    case BSFE_E_CLASS: return "class_bound";
    case BSFE_E_CIRCUIT: return "circuit";
    case BSFE_E_IO: return "io";
    case BSFE_E_PROTOCOL: return "protocol";
    case BSFE_E_CHECK: return "check_failed";
    case BSFE_E_INTERNAL: return "internal";
    case BSFE_E_NULL: return "null_argument";
    default: return "unknown";
  }
}

const char* bsfe_last_error(void) { return g_last_error.c_str(); }

int bsfe_config_new(bsfe_config** out) {
  if (out == nullptr) return BSFE_E_NULL;
  *out = nullptr;
  return guarded([&] {
    *out = new bsfe_config{};
    return BSFE_OK;
  });
}

void bsfe_config_free(bsfe_config* cfg) { delete cfg; }

int bsfe_config_set(bsfe_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr || key == nullptr || value == nullptr) return BSFE_E_NULL;
  return guarded([&] {
    cfg->cfg.set(key, value);
    return BSFE_OK;
  });
}

int bsfe_config_load_file(bsfe_config* cfg, const char* path) {
  if (cfg == nullptr || path == nullptr) return BSFE_E_NULL;
  return guarded([&] {
    cfg->cfg.load_file(path);
    return BSFE_OK;
  });
}

int bsfe_config_load_text(bsfe_config* cfg, const char* text) {
  if (cfg == nullptr || text == nullptr) return BSFE_E_NULL;
  return guarded([&] {
    cfg->cfg.load_text(text);
    return BSFE_OK;
  });
}

const char* bsfe_config_get(const bsfe_config* cfg, const char* key) {
  if (cfg == nullptr || key == nullptr) return nullptr;
  auto it = cfg->cfg.values().find(key);
  return it == cfg->cfg.values().end() ? nullptr : it->second.c_str();
}

int bsfe_run(const bsfe_config* cfg, const char* scenario, bsfe_result** out) {
  if (cfg == nullptr || scenario == nullptr || out == nullptr) return BSFE_E_NULL;
  *out = nullptr;
  return guarded([&] { return finish(bsfe::run_scenario(scenario, cfg->cfg), out); });
}

int bsfe_selftest(bsfe_result** out) {
  if (out == nullptr) return BSFE_E_NULL;
  *out = nullptr;
  return guarded([&] { return finish(bsfe::run_selftest(), out); });
}

size_t bsfe_scenario_count(void) { return bsfe::scenario_names().size(); }

const char* bsfe_scenario_name(size_t i) {
  static const auto names = bsfe::scenario_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

void bsfe_result_free(bsfe_result* r) { delete r; }
const char* bsfe_result_jsonl(const bsfe_result* r) { return r ? r->out.jsonl.c_str() : ""; }
const char* bsfe_result_summary(const bsfe_result* r) { return r ? r->out.summary.c_str() : ""; }
uint64_t bsfe_result_honest_violations(const bsfe_result* r) { return r ? r->out.honest_violations : 0; }
int bsfe_result_status(const bsfe_result* r) { return r ? r->status : BSFE_E_NULL; }

}  // extern "C"
