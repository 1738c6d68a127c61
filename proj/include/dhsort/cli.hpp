#pragma once

namespace dhsort {

// Full command-line driver behind the dhsort binary, callable in-process for
// tests. Returns the process exit code: 0 success, 1 data/verification/
// benchmark failure, 2 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace dhsort
