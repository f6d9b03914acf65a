#pragma once
// Command dispatch shared by the C API and the command line tool.

#include <string>

namespace thd {

struct CommandOutcome {
    std::string report_json;
    bool negative_verdict = false;  // command completed; its mathematical verdict is "no"
};

// Runs one named command with a JSON config string.  Throws Error on failure.
CommandOutcome run_command(const std::string& command, const std::string& config_json,
                           const std::string& cache_dir);

}  // namespace thd
