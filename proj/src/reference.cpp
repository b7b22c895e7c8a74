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

#include "nport/reference.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "nport/combinatorics.hpp"
#include "nport/error.hpp"

namespace nport {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool mul_into(u128& acc, u128 factor) { return !__builtin_mul_overflow(acc, factor, &acc); }

void check_ports(int ports) {
  if (ports < 2) fail(ErrorCode::kInvalidArgument, "need at least 2 ports");
}

double log_excess_prefactor(int ports, int excess) {
  return log_factorial(ports + excess) - log_factorial(excess) -
         (ports - 1) * std::numbers::ln2 - ports * std::log(static_cast<double>(ports));
}

constexpr int kExactPathLimit = 20;

}  // namespace

double Rational::to_double() const {
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double PatternFormula::value(double phi) const {
  return prefactor * (1.0 + parity_sign * std::cos(harmonic * phi));
}

double PatternFormula::derivative(double phi) const {
  return -prefactor * parity_sign * harmonic * std::sin(harmonic * phi);
}

int pattern_parity(int ports) { return ports % 2 == 0 ? -1 : 1; }

std::optional<Rational> excess_prefactor_rational(int ports, int excess) {
  check_ports(ports);
  if (excess < 0 || ports + excess > kExactPathLimit) return std::nullopt;
  u128 numerator = 1;
  for (int k = excess + 1; k <= ports + excess; ++k) {
    if (!mul_into(numerator, static_cast<u128>(k))) return std::nullopt;
  }
  u128 denominator = u128{1} << (ports - 1);
  for (int k = 0; k < ports; ++k) {
    if (!mul_into(denominator, static_cast<u128>(ports))) return std::nullopt;
  }
  const u128 g = gcd128(numerator, denominator);
  return Rational{numerator / g, denominator / g};
}

std::optional<Rational> fock_prefactor_rational(int ports) {
  return excess_prefactor_rational(ports, 0);
}

PatternFormula excess_pattern(int ports, int excess) {
  check_ports(ports);
  PatternFormula out;
  out.parity_sign = pattern_parity(ports);
  out.harmonic = ports;
  if (excess < 0) return out;
  if (auto exact = excess_prefactor_rational(ports, excess)) {
    out.prefactor = exact->to_double();
  } else {
    out.prefactor = std::exp(log_excess_prefactor(ports, excess));
  }
  return out;
}

PatternFormula fock_pattern(int ports) { return excess_pattern(ports, 0); }

GeneralPattern::GeneralPattern(int ports, PhotonWeights weights)
    : ports_(ports), weights_(std::move(weights)) {
  check_ports(ports);
  double total = 0.0;
  for (const auto& [j, w] : weights_) {
    if (j < 0 || !(w >= 0.0)) {
      fail(ErrorCode::kInvalidArgument, "photon weights need J >= 0 and |c_J|^2 >= 0");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::kNormalization,
         "photon weights sum to " + std::to_string(total) + ", expected 1");
  }
}

double GeneralPattern::operator()(double phi) const {
  double sum = 0.0;
  for (const auto& [j, w] : weights_) {
    if (j < ports_ || w == 0.0) continue;
    sum += w * excess_pattern(ports_, j - ports_).value(phi);
  }
  return sum;
}

GeneralPattern general_pattern(int ports, PhotonWeights weights) {
  return GeneralPattern(ports, std::move(weights));
}

NoonPrediction noon_signal_and_variance(int ports, double phi) {
  check_ports(ports);
  const double k =
      std::exp(log_factorial(ports) - ports * std::log(static_cast<double>(ports)));
  const double sign = ports % 2 == 0 ? 1.0 : -1.0;
  const double s = std::sin(ports * phi);
  return {k * (1.0 - sign * std::cos(ports * phi)), k * k * s * s};
}

NoiseClosedForms noise_closed_forms(int ports, int excess) {
  check_ports(ports);
  if (excess < 0) fail(ErrorCode::kInvalidArgument, "negative excess");
  const double n = ports;
  return {1.0 / n, std::sqrt(std::pow(2.0, ports - 1)) / n,
          1.0 / std::sqrt(static_cast<double>(ports + excess))};
}

double stirling_scaling(int ports) {
  check_ports(ports);
  const double n = ports;
  return std::sqrt(8.0 * std::numbers::pi * n) / std::pow(2.0 * std::numbers::e, n);
}

PhotonWeights coherent_weights(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    fail(ErrorCode::kInvalidArgument, "coherent mean photon number must be >= 0");
  }
  PhotonWeights out;
  if (mean == 0.0) {
    out.emplace(0, 1.0);
    return out;
  }
  auto poisson = [mean](int j) {
    return std::exp(-mean + j * std::log(mean) - log_factorial(j));
  };
  // Tail sums are accumulated directly from the far end, never as 1 - cdf.
  const int horizon = static_cast<int>(mean + 60.0 * std::sqrt(mean) + 60.0);
  std::vector<double> tail(static_cast<std::size_t>(horizon) + 2, 0.0);
  for (int j = horizon; j >= 0; --j) {
    tail[static_cast<std::size_t>(j)] = tail[static_cast<std::size_t>(j) + 1] + poisson(j);
  }
  int cutoff = 0;
  while (cutoff < horizon && tail[static_cast<std::size_t>(cutoff) + 1] >= 1e-12) ++cutoff;
  double kept = 0.0;
  for (int j = 0; j <= cutoff; ++j) kept += poisson(j);
  for (int j = 0; j <= cutoff; ++j) out.emplace(j, poisson(j) / kept);
  return out;
}

}  // namespace nport
