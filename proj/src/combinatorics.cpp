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

#include "nport/combinatorics.hpp"

#include <array>

namespace nport {

std::optional<std::uint64_t> binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    std::uint64_t next;
    if (__builtin_mul_overflow(result, static_cast<std::uint64_t>(n - k + i), &next)) {
      return std::nullopt;
    }
    result = next / static_cast<std::uint64_t>(i);
  }
  return result;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double sqrt_factorial(int n) {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    double f = 1.0;
    t[0] = 1.0;
    for (int i = 1; i < 171; ++i) {
      f *= i;
      t[static_cast<std::size_t>(i)] = std::sqrt(f);
    }
    return t;
  }();
  if (n >= 0 && n < 171) return table[static_cast<std::size_t>(n)];
  return std::exp(0.5 * log_factorial(n));
}

double multinomial(const std::vector<int>& parts) {
  std::uint64_t exact = 1;
  int running = 0;
  bool overflow = false;
  for (int m : parts) {
    running += m;
    auto b = binomial_exact(running, m);
    if (!b || __builtin_mul_overflow(exact, *b, &exact)) {
      overflow = true;
      break;
    }
  }
  if (!overflow) return static_cast<double>(exact);
  int total = 0;
  for (int m : parts) total += m;
  double log_value = log_factorial(total);
  for (int m : parts) log_value -= log_factorial(m);
  return std::exp(log_value);
}

}  // namespace nport
