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

#include "nport/observables.hpp"

#include <cmath>
#include <string>

#include "nport/error.hpp"

namespace nport {

std::string_view to_string(MomentConvention convention) {
  switch (convention) {
    case MomentConvention::kDetectorStatistics: return "detector";
    case MomentConvention::kReducedOperator: return "reduced";
  }
  return "unknown";
}

std::optional<MomentConvention> parse_convention(std::string_view text) {
  if (text == "detector" || text == "detector_statistics") {
    return MomentConvention::kDetectorStatistics;
  }
  if (text == "reduced" || text == "reduced_operator") return MomentConvention::kReducedOperator;
  return std::nullopt;
}

MomentResult MomentResult::from_moments(double mean, double second_moment) {
  double variance = second_moment - mean * mean;
  if (variance < 0.0) {
    if (variance < -1e-12) {
      fail(ErrorCode::kInvalidArgument,
           "negative variance " + std::to_string(variance) + " beyond rounding");
    }
    variance = 0.0;
  }
  return {mean, second_moment, variance};
}

MomentResult MomentResult::scaled(double gain) const {
  return from_moments(gain * mean, gain * gain * second_moment);
}

MomentResult coincidence_moments_detector(const NumberDistribution& distribution) {
  double mean = 0.0;
  double second = 0.0;
  for (const auto& [occ, p] : distribution) {
    double product = 1.0;
    for (std::size_t j = 0; j < occ.modes() && product != 0.0; ++j) product *= occ[j];
    mean += p * product;
    second += p * product * product;
  }
  return MomentResult::from_moments(mean, second);
}

MomentResult coincidence_moments_detector(const PureState& output_state) {
  return coincidence_moments_detector(number_distribution(output_state));
}

namespace {

void check_arm_state(const PureState& arm_state, int ports) {
  if (arm_state.modes() != 2) {
    fail(ErrorCode::kDimension, "reduced moments need a two-mode arm state, got " +
                                    std::to_string(arm_state.modes()) + " modes");
  }
  if (ports < 1) fail(ErrorCode::kInvalidArgument, "port count must be positive");
  if (!arm_state.is_normalized()) {
    fail(ErrorCode::kNormalization, "reduced moments need a normalized arm state");
  }
}

double parity(int ports) { return ports % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

MomentResult coincidence_moments_reduced(const PureState& arm_state, int ports) {
  check_arm_state(arm_state, ports);
  // B = a1^N - (-1)^N a2^N, B^dag = a1^dag^N - (-1)^N a2^dag^N.
  const double sign = parity(ports);
  const PureState b_psi = linear_combination(1.0, apply_annihilation_power(arm_state, 0, ports),
                                             -sign, apply_annihilation_power(arm_state, 1, ports));
  const PureState bdag_b_psi =
      linear_combination(1.0, apply_creation_power(b_psi, 0, ports), -sign,
                         apply_creation_power(b_psi, 1, ports));
  const double scale = std::pow(static_cast<double>(ports), ports);
  const double mean = inner_product(b_psi, b_psi).real() / scale;
  const double second = inner_product(bdag_b_psi, bdag_b_psi).real() / (scale * scale);
  return MomentResult::from_moments(mean, second);
}

double first_moment_crosscheck(const PureState& arm_state, int ports) {
  check_arm_state(arm_state, ports);
  const PureState lowered1 = apply_annihilation_power(arm_state, 0, ports);
  const PureState lowered2 = apply_annihilation_power(arm_state, 1, ports);
  const double dosage1 = inner_product(lowered1, lowered1).real();  // <a1^dag^N a1^N>
  const double dosage2 = inner_product(lowered2, lowered2).real();  // <a2^dag^N a2^N>
  const Amplitude cross12 = inner_product(lowered1, lowered2);      // <a1^dag^N a2^N>
  const Amplitude cross21 = inner_product(lowered2, lowered1);      // <a1^N a2^dag^N>
  const double value = dosage1 + dosage2 - parity(ports) * (cross12 + cross21).real();
  return value / std::pow(static_cast<double>(ports), ports);
}

double presence_expectation(const NumberDistribution& distribution) {
  double sum = 0.0;
  for (const auto& [occ, p] : distribution) {
    bool all_fire = true;
    for (std::size_t j = 0; j < occ.modes(); ++j) {
      if (occ[j] == 0) {
        all_fire = false;
        break;
      }
    }
    if (all_fire) sum += p;
  }
  return sum;
}

double presence_expectation(const PureState& output_state) {
  return presence_expectation(number_distribution(output_state));
}

}  // namespace nport
