// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "lopc/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return lopc::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
