//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "app.hpp"

int main(int argc, char **argv) {
  return ocsrbench::cli::run_cli(argc, argv, std::cout, std::cerr);
}
