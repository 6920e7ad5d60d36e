// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <vector>

#include "statengine/cli.hpp"

int main(int argc, char** argv) {
  return statengine::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
