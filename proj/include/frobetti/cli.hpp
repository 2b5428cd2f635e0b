/*
 * Copyright 2026 The frobetti Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace frobetti {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitPrecondition = 3,
  kExitGoldenMismatch = 4,
};

struct JobConfig {
  std::uint32_t p = 0;
  int n = 3;
  std::string f;  // polynomial text or "random"
  int d = 0;      // degree for random f
  std::uint64_t seed = 0;
  std::vector<int> qs;
  int steps = 4;
  std::optional<int> degree_cap;
  std::string mode = "quick";
  std::string format = "table";
  int threads = 0;
  bool allow_any_q = false;
};

/// Golden corpus location: $FROBETTI_GOLDEN_DIR, else the directory shipped with the sources.
std::string golden_dir();

/// Entry point shared by the executable and the tests. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frobetti
