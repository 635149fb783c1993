#ifndef BSFE_H
#define BSFE_H

#include <stddef.h>
#include <stdint.h>

#if defined(BSFE_BUILDING)
#define BSFE_API __attribute__((visibility("default")))
#else
#define BSFE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsfe_status {
  BSFE_OK = 0,
  BSFE_E_USAGE = 1,            /* unknown key, scenario or strategy; malformed value */
  BSFE_E_LEDGER = 2,           /* an honest party exceeded its memory budget */
  BSFE_E_PARAMETER = 3,        /* parameters outside the supported range */
  BSFE_E_INSECURE = 4,         /* parameters violate a security bound */
  BSFE_E_CLASS = 5,            /* circuit outside the scheme's class */
  BSFE_E_CIRCUIT = 6,          /* circuit text or file could not be parsed */
  BSFE_E_IO = 7,
  BSFE_E_PROTOCOL = 8,         /* consumed stream, expired handle, exhausted key... */
  BSFE_E_CHECK = 9,            /* a scenario's output disagreed with the reference */
  BSFE_E_INTERNAL = 10,
  BSFE_E_NULL = 11             /* a required pointer argument was NULL */
} bsfe_status;

typedef struct bsfe_config bsfe_config;
typedef struct bsfe_result bsfe_result;

BSFE_API const char* bsfe_version(void);
BSFE_API const char* bsfe_status_name(int status);
/* Message of the last failed call on this thread ("" if none). */
BSFE_API const char* bsfe_last_error(void);

BSFE_API int bsfe_config_new(bsfe_config** out);
BSFE_API void bsfe_config_free(bsfe_config* cfg);
BSFE_API int bsfe_config_set(bsfe_config* cfg, const char* key, const char* value);
BSFE_API int bsfe_config_load_file(bsfe_config* cfg, const char* path);
BSFE_API int bsfe_config_load_text(bsfe_config* cfg, const char* text);
/* NULL if the key is unset; valid until the config changes. */
BSFE_API const char* bsfe_config_get(const bsfe_config* cfg, const char* key);

/* Scenario names: run-ot, run-otp, run-bqs-fe, run-cbqs-fe, run-bcs-fe,
 * run-wgb, attack:cbqs-ind, attack:ot-sender, attack:bcs-forget.
 * A result is produced for BSFE_OK, BSFE_E_LEDGER and BSFE_E_CHECK;
 * otherwise *out is NULL. */
BSFE_API int bsfe_run(const bsfe_config* cfg, const char* scenario, bsfe_result** out);
BSFE_API int bsfe_selftest(bsfe_result** out);
BSFE_API size_t bsfe_scenario_count(void);
BSFE_API const char* bsfe_scenario_name(size_t i);

BSFE_API void bsfe_result_free(bsfe_result* r);
BSFE_API const char* bsfe_result_jsonl(const bsfe_result* r);
BSFE_API const char* bsfe_result_summary(const bsfe_result* r);
BSFE_API uint64_t bsfe_result_honest_violations(const bsfe_result* r);
BSFE_API int bsfe_result_status(const bsfe_result* r);

#ifdef __cplusplus
}
#endif

#endif
