// Exercises the shared library strictly through the public C header.
#include <cstdio>
#include <cstring>
#include <string>

#include "thetadoubler.h"

static int failures = 0;

#define CHECK_TRUE(cond)                                                  \
    do {                                                                  \
        if (!(cond)) {                                                    \
            std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);   \
            ++failures;                                                   \
        }                                                                 \
    } while (0)

int main() {
    CHECK_TRUE(td_version() != nullptr);
    CHECK_TRUE(std::strlen(td_version()) >= 5);

    td_session* s = td_session_new(nullptr);
    CHECK_TRUE(s != nullptr);

    // Unknown command reports usage error and a message.
    td_result* r = nullptr;
    td_status st = td_run_json(s, "definitely-not-a-command", "{}", &r);
    CHECK_TRUE(st == TD_E_USAGE);
    CHECK_TRUE(r == nullptr);
    CHECK_TRUE(std::strlen(td_session_last_error(s)) > 0);

    // Bad JSON config is a usage error, not a crash.
    st = td_run_json(s, "basis", "{not json", &r);
    CHECK_TRUE(st == TD_E_USAGE);

    // A small real run end to end.
    st = td_run_json(s, "basis", R"({"p":5,"N":23,"k":5,"chi":"23:11","prec":12})", &r);
    CHECK_TRUE(st == TD_OK);
    if (r) {
        const char* js = td_result_json(r);
        CHECK_TRUE(js != nullptr);
        std::string j(js);
        CHECK_TRUE(j.find("\"dimension\":9") != std::string::npos || j.find("\"dimension\": 9") != std::string::npos);
        td_result_free(r);
    } else {
        std::printf("FAIL: basis run returned no result (%s)\n", td_session_last_error(s));
        ++failures;
    }

    td_session_free(s);

    if (failures) {
        std::printf("%d C API check(s) failed\n", failures);
        return 1;
    }
    std::printf("all C API checks passed\n");
    return 0;
}
