// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include <iostream>
#include <string>
#include <vector>

#include "namegauge/cli.h"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv + 1, argv + argc);
  return namegauge::cli::run(args, std::cin, std::cout, std::cerr);
}
