// Copyright 2026 The nportsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Built-in self-checks of the simulator against the closed forms, runnable
// from the command line. Each suite reports every comparison it made.

#include <string>
#include <string_view>
#include <vector>

namespace nport {

struct VerificationCheck {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<VerificationCheck> checks;

  bool all_pass() const;
  /// {"suite": ..., "pass": ..., "checks": [{name, expected, actual, tol, pass}]}
  std::string to_json() const;
};

/// Suite names accepted by run_verification, in the order "all" runs them.
const std::vector<std::string>& verification_suites();

/// Runs a suite by name ("prefactors", "patterns", "noon", "loss",
/// "conventions", "threshold" or "all"). Throws kInvalidArgument for an
/// unknown name.
VerificationReport run_verification(std::string_view suite);

}  // namespace nport
