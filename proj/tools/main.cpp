// Command line front end; all mathematics happens behind the C API.
#include <cstdio>
#include <cstring>
#include <string>

#include "thetadoubler.h"

namespace {

void print_usage(FILE* to) {
    std::fprintf(to,
                 "usage: theta-doubler <command> [--config <json>] [--cache <dir>]\n"
                 "\n"
                 "commands:\n"
                 "  basis      q-expansion basis of a weight-k space mod p\n"
                 "  hecke      Hecke operator matrices on such a space\n"
                 "  doubling   doubling analysis of a local component\n"
                 "  weightone  weight-one subspace extraction\n"
                 "  nonlift    certify a weight-one form with no characteristic-zero lift\n"
                 "  primes     auxiliary prime search\n"
                 "\n"
                 "options:\n"
                 "  --config <json>   inline JSON configuration (default {})\n"
                 "  --config-file <f> read JSON configuration from a file\n"
                 "  --cache <dir>     on-disk cache directory (default $THETA_DOUBLER_CACHE)\n"
                 "  --version         print version and exit\n");
}

}  // namespace

int main(int argc, char** argv) {
    std::string command, config = "{}";
    const char* cache = nullptr;
    std::string config_from_file;

    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") {
            print_usage(stdout);
            return 0;
        }
        if (arg == "--version") {
            std::printf("theta-doubler %s\n", td_version());
            return 0;
        }
        if (arg == "--config") {
            if (++i >= argc) {
                std::fprintf(stderr, "error: --config needs a value\n");
                return 2;
            }
            config = argv[i];
            continue;
        }
        if (arg == "--config-file") {
            if (++i >= argc) {
                std::fprintf(stderr, "error: --config-file needs a value\n");
                return 2;
            }
            FILE* f = std::fopen(argv[i], "rb");
            if (!f) {
                std::fprintf(stderr, "error: cannot open %s\n", argv[i]);
                return 2;
            }
            char buf[4096];
            size_t n;
            config_from_file.clear();
            while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) config_from_file.append(buf, n);
            std::fclose(f);
            config = config_from_file;
            continue;
        }
        if (arg == "--cache") {
            if (++i >= argc) {
                std::fprintf(stderr, "error: --cache needs a value\n");
                return 2;
            }
            cache = argv[i];
            continue;
        }
        if (!arg.empty() && arg[0] == '-') {
            std::fprintf(stderr, "error: unknown option %s\n", arg.c_str());
            print_usage(stderr);
            return 2;
        }
        if (!command.empty()) {
            std::fprintf(stderr, "error: multiple commands given\n");
            return 2;
        }
        command = arg;
    }

    if (command.empty()) {
        print_usage(stderr);
        return 2;
    }

    td_session* s = td_session_new(cache);
    td_result* r = nullptr;
    td_status st = td_run_json(s, command.c_str(), config.c_str(), &r);
    int rc;
    if (r) {
        std::printf("%s\n", td_result_json(r));
        rc = int(td_result_status(r));
        td_result_free(r);
    } else {
        std::fprintf(stderr, "error: %s\n", td_session_last_error(s));
        rc = int(st);
    }
    td_session_free(s);
    return rc;
}
