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

// Harmonic analysis of real 2pi-periodic signals sampled on a uniform grid.
//
// Samples are taken at phi_i = offset + 2 pi i / M. A grid with M >= 2K + 1
// points determines a trigonometric polynomial of degree <= K exactly.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nport {

struct HarmonicSpectrum {
  /// Two-sided coefficients c_k for k = 0..K of f = sum_{|k|<=K} c_k e^{ik phi};
  /// c_{-k} = conj(c_k) for real input.
  std::vector<std::complex<double>> coefficients;

  double amplitude(std::size_t harmonic) const {
    return harmonic < coefficients.size() ? std::abs(coefficients[harmonic]) : 0.0;
  }
};

/// Throws kAliasing when values.size() < 2 * max_harmonic + 1.
HarmonicSpectrum harmonic_spectrum(std::span<const double> values, int max_harmonic,
                                   double offset = 0.0);

/// Exact trigonometric interpolant through samples on an odd-sized uniform
/// grid. Evaluates the signal and its derivative anywhere on the circle.
class TrigInterpolant {
 public:
  TrigInterpolant(std::span<const double> values, int max_harmonic, double offset = 0.0);

  double value(double phi) const;
  double derivative(double phi) const;
  double second_derivative(double phi) const;
  const HarmonicSpectrum& spectrum() const noexcept { return spectrum_; }

 private:
  HarmonicSpectrum spectrum_;
};

}  // namespace nport
