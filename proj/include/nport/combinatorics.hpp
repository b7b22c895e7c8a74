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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace nport {

/// C(n, k) exactly, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> binomial_exact(int n, int k);

/// n! / prod m_j! with n = sum m_j. Exact integer product when it fits in 64
/// bits, log-gamma otherwise.
double multinomial(const std::vector<int>& parts);

double log_factorial(int n);
double sqrt_factorial(int n);

/// Calls fn(parts) for every vector of `bins` non-negative integers summing to
/// `total`, in lexicographically decreasing order of parts[0], parts[1], ...
template <typename Fn>
void for_each_composition(int total, std::size_t bins, std::vector<int>& parts, Fn&& fn,
                          std::size_t index = 0) {
  if (index + 1 == bins) {
    parts[index] = total;
    fn(parts);
    return;
  }
  for (int k = total; k >= 0; --k) {
    parts[index] = k;
    for_each_composition(total - k, bins, parts, fn, index + 1);
  }
}

}  // namespace nport
