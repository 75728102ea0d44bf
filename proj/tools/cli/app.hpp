//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <iosfwd>

namespace ocsrbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNothingRecognized = 2;

/// Entry point of the ocsrbench command; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

}  // namespace ocsrbench::cli
