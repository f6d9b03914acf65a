#pragma once

namespace thd_accept {
// Runs every acceptance criterion, printing one PASS/FAIL line each.
// Returns the number of failures.
int run_all();
}  // namespace thd_accept
