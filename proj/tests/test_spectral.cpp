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

#include "nport/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "nport/error.hpp"
#include "test_support.hpp"

using namespace nport;
using nport::oracle::kPi;

namespace {

std::vector<double> sample(const std::function<double(double)>& f, int m, double offset) {
  std::vector<double> out;
  for (int i = 0; i < m; ++i) out.push_back(f(offset + 2.0 * kPi * i / m));
  return out;
}

}  // namespace

TEST(harmonic_spectrum, constant_is_dc_only) {
  const auto s = harmonic_spectrum(sample([](double) { return 0.7; }, 49, 0.0), 24);
  EXPECT_NEAR(s.amplitude(0), 0.7, 1e-15);
  for (std::size_t k = 1; k <= 24; ++k) EXPECT_LE(s.amplitude(k), 1e-15);
}

TEST(harmonic_spectrum, two_photon_fringe) {
  const double offset = kPi / 49.0;
  const auto s = harmonic_spectrum(
      sample([](double p) { return (1.0 - std::cos(2 * p)) / 4.0; }, 49, offset), 24, offset);
  EXPECT_NEAR(s.coefficients[0].real(), 0.25, 1e-15);
  EXPECT_NEAR(s.amplitude(2), 0.125, 1e-15);
  for (std::size_t k = 1; k <= 24; ++k) {
    if (k != 2) {
      EXPECT_LE(s.amplitude(k), 1e-13) << k;
    }
  }
}

TEST(harmonic_spectrum, fock_pattern_support) {
  for (int n = 2; n <= 6; ++n) {
    const double sign = n % 2 == 0 ? -1.0 : 1.0;
    auto f = [&](double p) { return 1.0 + sign * std::cos(n * p); };
    const auto s = harmonic_spectrum(sample(f, 25, 0.1), 12, 0.1);
    for (std::size_t k = 1; k <= 12; ++k) {
      if (static_cast<int>(k) == n) {
        EXPECT_NEAR(s.amplitude(k), 0.5, 1e-14);
      } else {
        EXPECT_LE(s.amplitude(k), 1e-13) << n << " " << k;
      }
    }
  }
}

TEST(harmonic_spectrum, aliasing_error) {
  try {
    harmonic_spectrum(sample([](double p) { return std::cos(p); }, 8, 0.0), 4);
    FAIL() << "expected an aliasing error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAliasing);
  }
}

TEST(trig_interpolant, exact_for_trig_polynomials) {
  auto f = [](double p) { return 0.3 + 0.2 * std::cos(3 * p) - 0.1 * std::sin(5 * p + 0.4); };
  auto df = [](double p) { return -0.6 * std::sin(3 * p) - 0.5 * std::cos(5 * p + 0.4); };
  auto d2f = [](double p) { return -1.8 * std::cos(3 * p) + 2.5 * std::sin(5 * p + 0.4); };
  const double offset = kPi / 21.0;
  const TrigInterpolant t(sample(f, 21, offset), 10, offset);
  for (double p = -4.0; p < 4.0; p += 0.173) {
    EXPECT_NEAR(t.value(p), f(p), 1e-14);
    EXPECT_NEAR(t.derivative(p), df(p), 1e-13);
    EXPECT_NEAR(t.second_derivative(p), d2f(p), 1e-12);
  }
}

TEST(trig_interpolant, pattern_derivative_on_grid) {
  // prefactor (1 - (-1)^N cos N phi) on the default 49-point grid.
  const double offset = kPi / 49.0;
  for (int n = 2; n <= 6; ++n) {
    const double pre = 1.0 / std::pow(2.0, n);
    const double sign = n % 2 == 0 ? -1.0 : 1.0;
    auto f = [&](double p) { return pre * (1.0 + sign * std::cos(n * p)); };
    const TrigInterpolant t(sample(f, 49, offset), 24, offset);
    for (int i = 0; i < 49; ++i) {
      const double p = offset + 2.0 * kPi * i / 49.0;
      EXPECT_NEAR(t.derivative(p), -pre * sign * n * std::sin(n * p), 1e-11);
    }
  }
}

TEST(trig_interpolant, rejects_even_grid) {
  EXPECT_THROW(TrigInterpolant(std::vector<double>(10, 1.0), 4), Error);
}
