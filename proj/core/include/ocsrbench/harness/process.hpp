//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <vector>

namespace ocsrbench::harness {

struct ProcessResult {
  int exit_code = -1;       // -1 unless the process exited normally
  bool timed_out = false;
  std::string stdout_text;
  double wall_time = 0.0;   // seconds
};

/// Runs argv[0] (PATH lookup when it has no '/') with stdin and stderr on
/// /dev/null and stdout captured. The child leads its own process group;
/// at the deadline the whole group is killed with SIGKILL. A program that
/// cannot be executed reports exit code 127. Throws HarnessError only for
/// an empty argv or when fork/pipe fail.
ProcessResult run_process(const std::vector<std::string> &argv,
                          double timeout_secs);

}  // namespace ocsrbench::harness
