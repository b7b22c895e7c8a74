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

// N-fold coincidence observable I_N = prod_j n_j over the N output channels
// and the photon-presence observable P_N = prod_j (1 - |0><0|_j).
//
// Two moment conventions exist and callers must choose one:
//
//   kDetectorStatistics  moments of prod_j n_j over the exact output number
//                        distribution (what a number-resolving detector array
//                        records);
//   kReducedOperator     moments of B^dag B / N^N with B = a1^N - (-a2)^N, the
//                        two-arm form of the coincidence operator obtained by
//                        dropping the vacuum ports.
//
// Both agree on the mean for every state with vacuum in ports 3..N. Second
// moments differ once the photon number exceeds two.

#include <cstddef>
#include <optional>
#include <string_view>

#include "nport/fock.hpp"

namespace nport {

enum class MomentConvention { kDetectorStatistics, kReducedOperator };

std::string_view to_string(MomentConvention convention);
/// Accepts "detector" / "detector_statistics" and "reduced" / "reduced_operator".
std::optional<MomentConvention> parse_convention(std::string_view text);

struct MomentResult {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;

  /// variance = second - mean^2, with rounding-level negatives (>= -1e-12)
  /// clamped to zero.
  static MomentResult from_moments(double mean, double second_moment);

  /// Moments of gain * I.
  MomentResult scaled(double gain) const;
};

MomentResult coincidence_moments_detector(const NumberDistribution& distribution);
MomentResult coincidence_moments_detector(const PureState& output_state);

/// `arm_state` is the two-mode state of arms a1, a2 after the phase shift and
/// before the N-port.
MomentResult coincidence_moments_reduced(const PureState& arm_state, int ports);

/// <I_N> from the expanded form: N-particle dosage terms of each arm plus the
/// two cross-arm terms, each evaluated separately.
double first_moment_crosscheck(const PureState& arm_state, int ports);

double presence_expectation(const NumberDistribution& distribution);
double presence_expectation(const PureState& output_state);

/// Weighted moments over an ensemble; `moments` maps one component to its
/// MomentResult.
template <typename Fn>
MomentResult ensemble_moments(const MixedEnsemble& ensemble, Fn&& moments) {
  double mean = 0.0;
  double second = 0.0;
  for (const auto& c : ensemble.components()) {
    const MomentResult m = moments(c.state);
    mean += c.weight * m.mean;
    second += c.weight * m.second_moment;
  }
  return MomentResult::from_moments(mean, second);
}

}  // namespace nport
