#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bsfe/bsfe.h"

namespace {

struct Flags {
  std::string config;
  std::map<std::string, std::string> values;
};

void add_flags(CLI::App* cmd, Flags& f, bool attack) {
  cmd->add_option("--config", f.config, "flat key=value file; flags override it");
  struct Opt {
    const char* key;
    const char* help;
  };
  static const Opt common[] = {
      {"s", "adversary quantum memory (qubits)"},
      {"r", "bound applications (bqs-fe)"},
      {"n", "stream dimension (bcs-fe, wgb)"},
      {"lambda", "security parameter"},
      {"l", "string or label length; field degree for bqs-fe"},
      {"w", "expected circuit-encoding length"},
      {"trials", "runs or games"},
      {"seed", "master seed (falls back to BSFE_SEED)"},
      {"backend", "kil or yao (bqs-fe)"},
      {"ledger-mode", "record (default) or strict"},
      {"circuit", "fixture name or .circ file"},
      {"out", "write JSONL here instead of standard output"},
  };
  static const Opt extra[] = {
      {"strategy", "one registered strategy (default: all)"},
      {"m", "qubits per transfer (ot-sender)"},
      {"u", "unknown bits (bcs-forget half-row)"},
      {"enforce", "0 disables the parameter check (ot-sender)"},
  };
  auto add = [&](const Opt& o) {
    cmd->add_option_function<std::string>(
        std::string("--") + o.key, [&f, key = std::string(o.key)](const std::string& v) { f.values[key] = v; },
        o.help);
  };
  for (const auto& o : common) add(o);
  if (attack)
    for (const auto& o : extra) add(o);
}

int fail(const std::string& what) {
  std::cerr << "bsfe: " << what << "\n";
  return 1;
}

int exit_code(int status) {
  if (status == BSFE_OK) return 0;
  if (status == BSFE_E_LEDGER) return 2;
  return 1;
}

int emit(bsfe_result* r, const std::string& out_path) {
  const int status = bsfe_result_status(r);
  if (out_path.empty()) {
    std::cout << bsfe_result_jsonl(r);
    std::cerr << bsfe_result_summary(r);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      bsfe_result_free(r);
      return fail("cannot write " + out_path);
    }
    f << bsfe_result_jsonl(r);
    std::cout << bsfe_result_summary(r);
  }
  bsfe_result_free(r);
  if (status != BSFE_OK) std::cerr << "bsfe: " << bsfe_status_name(status) << "\n";
  return exit_code(status);
}

int run(const std::string& scenario, const Flags& flags) {
  bsfe_config* cfg = nullptr;
  if (bsfe_config_new(&cfg) != BSFE_OK) return fail(bsfe_last_error());
  auto bail = [&](int) {
    const std::string msg = bsfe_last_error();
    bsfe_config_free(cfg);
    return fail(msg);
  };
  if (!flags.config.empty())
    if (int st = bsfe_config_load_file(cfg, flags.config.c_str()); st != BSFE_OK) return bail(st);
  for (const auto& [k, v] : flags.values)
    if (int st = bsfe_config_set(cfg, k.c_str(), v.c_str()); st != BSFE_OK) return bail(st);
  if (bsfe_config_get(cfg, "seed") == nullptr)
    if (const char* env = std::getenv("BSFE_SEED"))
      if (int st = bsfe_config_set(cfg, "seed", env); st != BSFE_OK) return bail(st);
  const char* out = bsfe_config_get(cfg, "out");
  const std::string out_path = out ? out : "";
  bsfe_result* r = nullptr;
  const int st = bsfe_run(cfg, scenario.c_str(), &r);
  if (r == nullptr) return bail(st);
  bsfe_config_free(cfg);
  return emit(r, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-storage functional encryption simulator"};
  app.require_subcommand(1);
  std::map<std::string, Flags> flags;
  const char* runs[][2] = {
      {"run-ot", "oblivious transfer in the bounded quantum storage model"},
      {"run-otp", "one-time program from a garbled circuit"},
      {"run-bqs-fe", "functional encryption with quantum broadcasts"},
      {"run-cbqs-fe", "functional encryption for arbitrary small circuits"},
      {"run-bcs-fe", "streaming functional encryption (classical storage)"},
      {"run-wgb", "obfuscation from streaming functional encryption"},
  };
  for (const auto& [name, help] : runs) add_flags(app.add_subcommand(name, help), flags[name], false);

  auto* attack = app.add_subcommand("attack", "run adversary strategies against a scheme");
  std::string target;
  attack->add_option("target", target, "cbqs-ind, ot-sender or bcs-forget")
      ->required()
      ->check(CLI::IsMember({"cbqs-ind", "ot-sender", "bcs-forget"}));
  add_flags(attack, flags["attack"], true);

  auto* selftest = app.add_subcommand("selftest", "quick end-to-end and statistical checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (selftest->parsed()) {
    bsfe_result* r = nullptr;
    const int st = bsfe_selftest(&r);
    if (r == nullptr) return fail(bsfe_last_error());
    std::cout << bsfe_result_summary(r);
    bsfe_result_free(r);
    return exit_code(st);
  }
  if (attack->parsed()) return run("attack:" + target, flags["attack"]);
  for (const auto& [name, help] : runs)
    if (app.got_subcommand(name)) return run(name, flags[name]);
  return 1;
}
