#include "thetadoubler.h"

#include <string>

#include "commands.hpp"
#include "common.hpp"

struct td_session {
    std::string cache_dir;
    std::string last_error;
};

struct td_result {
    std::string json;
    td_status status;
};

extern "C" {

const char* td_version(void) { return "1.0.0"; }

td_session* td_session_new(const char* cache_dir) {
    auto* s = new td_session();
    if (cache_dir) {
        s->cache_dir = cache_dir;
    } else if (const char* env = std::getenv("THETA_DOUBLER_CACHE")) {
        s->cache_dir = env;
    }
    return s;
}

void td_session_free(td_session* s) { delete s; }

const char* td_session_last_error(const td_session* s) { return s ? s->last_error.c_str() : ""; }

td_status td_run_json(td_session* s, const char* command, const char* config_json, td_result** out) {
    if (!s) return TD_E_USAGE;
    s->last_error.clear();
    if (out) *out = nullptr;
    if (!command || !out) {
        s->last_error = "UsageError: command and result pointer are required";
        return TD_E_USAGE;
    }
    try {
        thd::CommandOutcome oc = thd::run_command(command, config_json ? config_json : "{}", s->cache_dir);
        auto* r = new td_result();
        r->json = std::move(oc.report_json);
        r->status = oc.negative_verdict ? TD_E_VERDICT : TD_OK;
        *out = r;
        return r->status;
    } catch (const thd::Error& e) {
        s->last_error = e.what();
        return e.code() == thd::ErrorCode::UsageError || e.code() == thd::ErrorCode::BadCharacterLabel
                   ? TD_E_USAGE
                   : TD_E_COMPUTE;
    } catch (const std::exception& e) {
        s->last_error = std::string("Internal: ") + e.what();
        return TD_E_COMPUTE;
    }
}

const char* td_result_json(const td_result* r) { return r ? r->json.c_str() : ""; }

td_status td_result_status(const td_result* r) { return r ? r->status : TD_E_USAGE; }

void td_result_free(td_result* r) { delete r; }

}  // extern "C"
