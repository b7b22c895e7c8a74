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

#include "nport/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nport/combinatorics.hpp"
#include "nport/error.hpp"
#include "nport/networks.hpp"
#include "nport/observables.hpp"
#include "nport/parallel.hpp"

namespace nport {

LossSpec::LossSpec(std::vector<Amplitude> transmissions) : tau_(std::move(transmissions)) {
  if (tau_.empty()) fail(ErrorCode::kInvalidArgument, "loss needs at least one channel");
  for (const Amplitude& t : tau_) {
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) || std::abs(t) > 1.0 + 1e-14) {
      fail(ErrorCode::kInvalidArgument, "transmission amplitudes need |tau| <= 1");
    }
  }
}

LossSpec LossSpec::lossless(std::size_t channels) {
  return LossSpec(std::vector<Amplitude>(channels, Amplitude{1.0, 0.0}));
}

Amplitude LossSpec::reflection(std::size_t channel) const {
  return {std::sqrt(std::max(0.0, 1.0 - std::norm(tau_.at(channel)))), 0.0};
}

double LossSpec::transmission_factor() const {
  double t = 1.0;
  for (const Amplitude& tau : tau_) t *= std::min(1.0, std::norm(tau));
  return t;
}

double lossy_signal_scaled(double base_mean, const LossSpec& loss) {
  if (base_mean < 0.0) fail(ErrorCode::kInvalidArgument, "negative base signal");
  return loss.transmission_factor() * base_mean;
}

namespace {

void check_channels(std::size_t modes, const LossSpec& loss) {
  if (loss.channels() != modes) {
    fail(ErrorCode::kDimension, "loss has " + std::to_string(loss.channels()) +
                                    " channels, state has " + std::to_string(modes));
  }
}

}  // namespace

double lossy_signal_ancilla(const PureState& output_state, const LossSpec& loss) {
  const std::size_t n = output_state.modes();
  check_channels(n, loss);
  if (n > 4 || output_state.max_photons() > 8) {
    fail(ErrorCode::kCapacity, "ancilla loss model is limited to 4 channels and 8 photons");
  }
  // Channel j lives in mode j, its vacuum ancilla in mode n + j.
  PureState::Terms padded;
  for (const auto& [occ, amp] : output_state.terms()) {
    OccupationVector wide(2 * n);
    for (std::size_t j = 0; j < n; ++j) wide.set(j, occ[j]);
    padded.emplace(wide, amp);
  }
  const PureState wide_state(2 * n, std::move(padded), output_state.photon_cap());

  // Rows of U^dag give the substitution A_j^dag -> tau_j^* A_j^dag + rho_j^* V_j^dag.
  const auto dim = static_cast<Eigen::Index>(2 * n);
  ModeUnitary::Matrix substitution = ModeUnitary::Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    const auto a = static_cast<Eigen::Index>(j);
    const auto v = static_cast<Eigen::Index>(n + j);
    const Amplitude tau = loss.transmission(j);
    const Amplitude rho = loss.reflection(j);
    substitution(a, a) = std::conj(tau);
    substitution(a, v) = std::conj(rho);
    substitution(v, a) = -rho;
    substitution(v, v) = tau;
  }
  const ModeUnitary coupler(substitution.adjoint());
  const PureState after = evolve(wide_state, coupler);

  NumberDistribution kept;
  for (const auto& [occ, p] : number_distribution(after)) {
    OccupationVector narrow(n);
    for (std::size_t j = 0; j < n; ++j) narrow.set(j, occ[j]);
    kept[narrow] += p;
  }
  return coincidence_moments_detector(kept).mean;
}

NumberDistribution thinned_distribution(const NumberDistribution& distribution,
                                        const LossSpec& loss) {
  NumberDistribution out;
  for (const auto& [occ, p] : distribution) {
    const std::size_t n = occ.modes();
    check_channels(n, loss);
    OccupationVector kept(n);
    // Depth-first over surviving counts k_j <= n_j.
    auto recurse = [&](auto&& self, std::size_t j, double weight) -> void {
      if (weight == 0.0) return;
      if (j == n) {
        out[kept] += weight;
        return;
      }
      const double t = std::min(1.0, std::norm(loss.transmission(j)));
      const int total = occ[j];
      for (int k = 0; k <= total; ++k) {
        const double b = static_cast<double>(*binomial_exact(total, k)) *
                         std::pow(t, k) * std::pow(1.0 - t, total - k);
        kept.set(j, k);
        self(self, j + 1, weight * b);
      }
    };
    recurse(recurse, 0, p);
  }
  return out;
}

double threshold_response(const PureState& output_state) {
  return presence_expectation(output_state);
}

namespace {

struct BlockTally {
  std::uint64_t trials = 0;
  std::uint64_t presence = 0;
  std::uint64_t product_sum = 0;
  std::uint64_t product_square_sum = 0;
};

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

SampleReport sample_clicks(const NumberDistribution& distribution, std::uint64_t trials,
                           std::uint64_t seed, const std::optional<LossSpec>& loss,
                           unsigned threads) {
  if (trials == 0) fail(ErrorCode::kInvalidArgument, "need at least one trial");
  if (distribution.empty()) fail(ErrorCode::kNormalization, "empty distribution");
  std::vector<OccupationVector> configs;
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& [occ, p] : distribution) {
    total += p;
    configs.push_back(occ);
    cumulative.push_back(total);
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    fail(ErrorCode::kNormalization, "distribution does not sum to 1");
  }
  const std::size_t modes = configs.front().modes();
  if (loss) check_channels(modes, *loss);

  const std::uint64_t blocks = (trials + kSampleBlockSize - 1) / kSampleBlockSize;
  auto run_block = [&](std::size_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(block) >> 32)};
    std::mt19937_64 gen(seq);
    BlockTally tally;
    const std::uint64_t begin = block * kSampleBlockSize;
    tally.trials = std::min(trials - begin, kSampleBlockSize);
    for (std::uint64_t t = 0; t < tally.trials; ++t) {
      const double u = uniform01(gen) * total;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (it == cumulative.end()) --it;
      const OccupationVector& occ = configs[static_cast<std::size_t>(it - cumulative.begin())];
      std::uint64_t product = 1;
      for (std::size_t j = 0; j < modes; ++j) {
        int count = occ[j];
        if (loss) {
          const double survive = std::min(1.0, std::norm(loss->transmission(j)));
          int kept = 0;
          for (int photon = 0; photon < count; ++photon) kept += uniform01(gen) < survive;
          count = kept;
        }
        product *= static_cast<std::uint64_t>(count);
      }
      tally.presence += product > 0;
      tally.product_sum += product;
      tally.product_square_sum += product * product;
    }
    return tally;
  };
  const auto tallies = parallel_map(static_cast<std::size_t>(blocks), run_block, threads);

  BlockTally sum;
  for (const auto& t : tallies) {
    sum.trials += t.trials;
    sum.presence += t.presence;
    sum.product_sum += t.product_sum;
    sum.product_square_sum += t.product_square_sum;
  }
  const double n = static_cast<double>(sum.trials);
  SampleReport report;
  report.trials = sum.trials;
  report.seed = seed;
  report.coincidence_rate = static_cast<double>(sum.product_sum) / n;
  report.presence_rate = static_cast<double>(sum.presence) / n;
  const double second = static_cast<double>(sum.product_square_sum) / n;
  const double spread = std::max(0.0, second - report.coincidence_rate * report.coincidence_rate);
  report.standard_error = std::sqrt(spread / n);
  report.presence_standard_error =
      std::sqrt(report.presence_rate * (1.0 - report.presence_rate) / n);
  return report;
}

SampleReport sample_clicks(const PureState& output_state, std::uint64_t trials,
                           std::uint64_t seed, const std::optional<LossSpec>& loss,
                           unsigned threads) {
  return sample_clicks(number_distribution(output_state), trials, seed, loss, threads);
}

}  // namespace nport
