#include "commands.hpp"

#include "common.hpp"

namespace thd {

CommandOutcome run_command(const std::string& command, const std::string& config_json,
                           const std::string& cache_dir) {
    (void)config_json;
    (void)cache_dir;
    fail(ErrorCode::UsageError, "unknown command '" + command + "'");
}

}  // namespace thd
