/* theta-doubler: modular-form computations in small characteristic.
 *
 * C interface to the computational core.  All state lives behind opaque
 * handles; every call reports success or failure through td_status.  Commands
 * take a JSON configuration string and produce a JSON report, mirroring the
 * command line tool one-to-one.
 */
#ifndef THETADOUBLER_H
#define THETADOUBLER_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum td_status {
    TD_OK = 0,
    TD_E_USAGE = 2,   /* malformed request: unknown command, bad config, bad label */
    TD_E_COMPUTE = 3, /* the computation could not be carried out */
    TD_E_VERDICT = 4, /* command ran fully but its verdict is negative */
} td_status;

typedef struct td_session td_session;
typedef struct td_result td_result;

/* Library version, e.g. "1.0.0". Static storage; do not free. */
const char* td_version(void);

/* Sessions own caches shared between runs.  cache_dir may be NULL for the
 * default resolution: $THETA_DOUBLER_CACHE if set, else no on-disk cache. */
td_session* td_session_new(const char* cache_dir);
void td_session_free(td_session* s);

/* Last error message for calls on this session that returned != TD_OK.
 * Owned by the session, valid until the next call on the same session. */
const char* td_session_last_error(const td_session* s);

/* Run one command ("basis", "hecke", "doubling", "weightone", "nonlift",
 * "primes") with a JSON config.  On success (and for TD_E_VERDICT, which
 * still carries a full report) *out receives a result handle. */
td_status td_run_json(td_session* s, const char* command, const char* config_json, td_result** out);

/* JSON text of a result. Owned by the result handle. */
const char* td_result_json(const td_result* r);
td_status td_result_status(const td_result* r);
void td_result_free(td_result* r);

#ifdef __cplusplus
}
#endif

#endif /* THETADOUBLER_H */
