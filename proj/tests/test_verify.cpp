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

#include "nport/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>

#include "nport/error.hpp"

using namespace nport;
using nlohmann::json;

TEST(verification, every_suite_passes) {
  for (const std::string& suite : verification_suites()) {
    const VerificationReport report = run_verification(suite);
    EXPECT_EQ(report.suite, suite);
    EXPECT_FALSE(report.checks.empty()) << suite;
    for (const VerificationCheck& c : report.checks) {
      EXPECT_TRUE(c.pass) << suite << ": " << c.name << " expected " << c.expected << " got "
                          << c.actual;
    }
    EXPECT_TRUE(report.all_pass());
  }
}

TEST(verification, prefactor_suite_lists_five_rationals) {
  const VerificationReport report = run_verification("prefactors");
  const double expected[] = {1.0 / 4, 1.0 / 18, 3.0 / 256, 3.0 / 1250, 5.0 / 10368};
  ASSERT_EQ(report.checks.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_DOUBLE_EQ(report.checks[i].expected, expected[i]);
  }
}

TEST(verification, loss_suite_has_twenty_random_cases) {
  const VerificationReport report = run_verification("loss");
  EXPECT_GE(report.checks.size(), 20u);
}

TEST(verification, json_shape) {
  VerificationReport report{"demo", {{"ok", 1.0, 1.0, 1e-12, true},
                                     {"bad", 2.0, NAN, 1e-12, false}}};
  EXPECT_FALSE(report.all_pass());
  const json doc = json::parse(report.to_json());
  EXPECT_EQ(doc.at("suite"), "demo");
  EXPECT_EQ(doc.at("pass"), false);
  ASSERT_EQ(doc.at("checks").size(), 2u);
  const json& first = doc.at("checks")[0];
  for (const char* key : {"name", "expected", "actual", "tol", "pass"}) {
    EXPECT_TRUE(first.contains(key)) << key;
  }
  EXPECT_TRUE(doc.at("checks")[1].at("actual").is_null());
}

TEST(verification, unknown_suite) {
  try {
    run_verification("nonsense");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}
