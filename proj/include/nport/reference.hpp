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

// Closed-form predictions for the coincidence signal and the phase spread.
// These are the analytic side of every simulation-vs-formula comparison.

#include <map>
#include <optional>
#include <utility>

namespace nport {

/// Exact positive rational with 128-bit parts, always in lowest terms.
struct Rational {
  unsigned __int128 numerator = 0;
  unsigned __int128 denominator = 1;

  double to_double() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// prefactor * (1 + parity_sign * cos(harmonic * phi)).
struct PatternFormula {
  double prefactor = 0.0;
  int parity_sign = -1;
  int harmonic = 0;

  double value(double phi) const;
  double derivative(double phi) const;
};

/// -(-1)^N
int pattern_parity(int ports);

/// N! / (2^{N-1} N^N) exactly; nullopt when it does not fit 128 bits.
std::optional<Rational> fock_prefactor_rational(int ports);
/// (N+E)!/E! / (2^{N-1} N^N) exactly for N+E <= 20.
std::optional<Rational> excess_prefactor_rational(int ports, int excess);

/// Fock state of N photons into N ports.
PatternFormula fock_pattern(int ports);
/// Fock state of N+E photons into N ports. A negative excess gives the zero
/// formula (prefactor 0).
PatternFormula excess_pattern(int ports, int excess);

/// Photon-number probabilities |c_J|^2 of a single-arm input.
using PhotonWeights = std::map<int, double>;

/// sum_E |c_{N+E}|^2 excess_pattern(N, E)(phi)
class GeneralPattern {
 public:
  GeneralPattern(int ports, PhotonWeights weights);
  double operator()(double phi) const;

 private:
  int ports_;
  PhotonWeights weights_;
};

GeneralPattern general_pattern(int ports, PhotonWeights weights);

struct NoonPrediction {
  double mean;
  double variance;
};

/// Mean (N!/N^N)(1 - (-1)^N cos N phi), variance (N!/N^N)^2 sin^2 N phi.
NoonPrediction noon_signal_and_variance(int ports, double phi);

struct NoiseClosedForms {
  double noon;  // 1/N
  double fock;  // sqrt(2^{N-1})/N
  double shot;  // 1/sqrt(N+E)
};

NoiseClosedForms noise_closed_forms(int ports, int excess);

/// sqrt(8 pi N) / (2e)^N, the Stirling approximant of N!/(2^{N-1} N^N).
double stirling_scaling(int ports);

/// Poisson weights of a coherent state with mean photon number `mean`,
/// truncated at the smallest J_max whose tail mass is below 1e-12 and
/// renormalized over 0..J_max.
PhotonWeights coherent_weights(double mean);

}  // namespace nport
