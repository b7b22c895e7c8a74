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

#include <cmath>
#include <numbers>
#include <string>

#include "nport/error.hpp"

namespace nport {

HarmonicSpectrum harmonic_spectrum(std::span<const double> values, int max_harmonic,
                                   double offset) {
  const std::size_t m = values.size();
  if (max_harmonic < 0) fail(ErrorCode::kInvalidArgument, "negative harmonic bound");
  if (m < 2 * static_cast<std::size_t>(max_harmonic) + 1) {
    fail(ErrorCode::kAliasing, "grid of " + std::to_string(m) +
                                   " points cannot resolve harmonics up to " +
                                   std::to_string(max_harmonic));
  }
  // Every harmonic below the Nyquist limit is resolved, not just max_harmonic.
  const std::size_t top = (m - 1) / 2;
  HarmonicSpectrum out;
  out.coefficients.resize(top + 1);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  for (std::size_t k = 0; k <= top; ++k) {
    std::complex<double> sum{};
    for (std::size_t i = 0; i < m; ++i) {
      // Index arithmetic mod m keeps the twiddle angle exact.
      const std::size_t r = (k * i) % m;
      sum += values[i] * std::polar(1.0, -step * static_cast<double>(r));
    }
    out.coefficients[k] = sum * std::polar(1.0, -static_cast<double>(k) * offset) /
                          static_cast<double>(m);
  }
  return out;
}

TrigInterpolant::TrigInterpolant(std::span<const double> values, int max_harmonic,
                                 double offset)
    : spectrum_(harmonic_spectrum(values, max_harmonic, offset)) {
  if (values.size() % 2 == 0) {
    fail(ErrorCode::kInvalidArgument, "interpolation grid must have an odd point count");
  }
}

double TrigInterpolant::value(double phi) const {
  const auto& c = spectrum_.coefficients;
  double sum = c[0].real();
  for (std::size_t k = 1; k < c.size(); ++k) {
    sum += 2.0 * (c[k] * std::polar(1.0, static_cast<double>(k) * phi)).real();
  }
  return sum;
}

double TrigInterpolant::derivative(double phi) const {
  const auto& c = spectrum_.coefficients;
  double sum = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double kk = static_cast<double>(k);
    sum += 2.0 * (std::complex<double>(0.0, kk) * c[k] * std::polar(1.0, kk * phi)).real();
  }
  return sum;
}

double TrigInterpolant::second_derivative(double phi) const {
  const auto& c = spectrum_.coefficients;
  double sum = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double kk = static_cast<double>(k);
    sum -= 2.0 * kk * kk * (c[k] * std::polar(1.0, kk * phi)).real();
  }
  return sum;
}

}  // namespace nport
