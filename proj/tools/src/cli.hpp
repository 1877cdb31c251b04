#pragma once

namespace tptmap::cli {

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 success, 2 config error, 3 data error, 4 numerical failure.
int run(int argc, char** argv);

}  // namespace tptmap::cli
