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

// Detector imperfections at the output channels: loss, threshold response,
// and a seeded Monte Carlo click sampler.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nport/fock.hpp"

namespace nport {

/// Per-channel amplitude transmissions tau_j, |tau_j| <= 1. The reflection
/// amplitude rho_j is taken real and non-negative, rho_j = sqrt(1 - |tau_j|^2).
class LossSpec {
 public:
  explicit LossSpec(std::vector<Amplitude> transmissions);
  static LossSpec lossless(std::size_t channels);

  std::size_t channels() const noexcept { return tau_.size(); }
  Amplitude transmission(std::size_t channel) const { return tau_.at(channel); }
  Amplitude reflection(std::size_t channel) const;
  /// T = prod_k |tau_k|^2
  double transmission_factor() const;

 private:
  std::vector<Amplitude> tau_;
};

/// T * base_mean.
double lossy_signal_scaled(double base_mean, const LossSpec& loss);

/// Coincidence mean after explicit vacuum-ancilla loss: each output channel j
/// is mixed with its own vacuum ancilla on a (tau_j, rho_j) splitter, the
/// ancillas are traced out, and the coincidence mean of the kept channels is
/// returned. Restricted to N <= 4 channels and at most 8 photons.
double lossy_signal_ancilla(const PureState& output_state, const LossSpec& loss);

/// Number distribution seen behind lossy detectors: each channel count is
/// binomially thinned with survival probability |tau_j|^2.
NumberDistribution thinned_distribution(const NumberDistribution& distribution,
                                        const LossSpec& loss);

/// Threshold (presence-only) detectors: <P_N>.
double threshold_response(const PureState& output_state);

struct SampleReport {
  std::uint64_t trials = 0;
  /// Sample mean of prod_j n_j.
  double coincidence_rate = 0.0;
  /// Fraction of trials in which every channel registered a click.
  double presence_rate = 0.0;
  /// Standard error of coincidence_rate; sqrt(p(1-p)/trials) when every
  /// product is 0 or 1.
  double standard_error = 0.0;
  double presence_standard_error = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SampleReport&, const SampleReport&) = default;
};

inline constexpr std::uint64_t kSampleBlockSize = 4096;

/// Draws `trials` configurations from `distribution`, thinning each channel
/// when `loss` is given. Trials are split into fixed blocks of
/// kSampleBlockSize, each with its own generator seeded from (seed, block), so
/// the report does not depend on `threads`.
SampleReport sample_clicks(const NumberDistribution& distribution, std::uint64_t trials,
                           std::uint64_t seed, const std::optional<LossSpec>& loss = std::nullopt,
                           unsigned threads = 1);
SampleReport sample_clicks(const PureState& output_state, std::uint64_t trials,
                           std::uint64_t seed, const std::optional<LossSpec>& loss = std::nullopt,
                           unsigned threads = 1);

}  // namespace nport
