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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nport/error.hpp"
#include "nport/networks.hpp"
#include "test_support.hpp"

using namespace nport;
using nport::oracle::kPi;

namespace {

const double kRoot2 = std::sqrt(2.0);

// Dense two-mode model truncated at `cutoff` photons per mode; index
// n1 * (cutoff + 1) + n2.
struct DenseTwoMode {
  int cutoff;
  Eigen::MatrixXcd a1;
  Eigen::MatrixXcd a2;

  explicit DenseTwoMode(int c) : cutoff(c) {
    const int d = (c + 1) * (c + 1);
    a1 = Eigen::MatrixXcd::Zero(d, d);
    a2 = Eigen::MatrixXcd::Zero(d, d);
    for (int n1 = 0; n1 <= c; ++n1) {
      for (int n2 = 0; n2 <= c; ++n2) {
        if (n1 > 0) a1(index(n1 - 1, n2), index(n1, n2)) = std::sqrt(n1);
        if (n2 > 0) a2(index(n1, n2 - 1), index(n1, n2)) = std::sqrt(n2);
      }
    }
  }
  int index(int n1, int n2) const { return n1 * (cutoff + 1) + n2; }

  Eigen::VectorXcd vector(const PureState& s) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(a1.rows());
    for (const auto& [occ, amp] : s.terms()) v(index(occ[0], occ[1])) = amp;
    return v;
  }

  // <B^dag B>/N^N and <(B^dag B)^2>/N^2N with B = a1^N - (-a2)^N.
  std::pair<double, double> reduced(const PureState& s, int n) const {
    Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Identity(a1.rows(), a1.cols());
    Eigen::MatrixXcd p2 = p1;
    for (int k = 0; k < n; ++k) {
      p1 = a1 * p1;
      p2 = -a2 * p2;
    }
    const Eigen::MatrixXcd b = p1 - p2;
    const Eigen::MatrixXcd i = b.adjoint() * b;
    const Eigen::VectorXcd v = vector(s);
    const double scale = std::pow(static_cast<double>(n), n);
    const double mean = (v.adjoint() * i * v)(0).real() / scale;
    const double second = (v.adjoint() * i * i * v)(0).real() / (scale * scale);
    return {mean, second};
  }
};

PureState arm_fock(int photons, double phi) {
  return evolve(PureState::basis({photons, 0}), balanced_splitter_with_phase(phi));
}

PureState arm_noon(int n, double phi) {
  PureState::Terms t;
  t[{n, 0}] = 1.0 / kRoot2;
  t[{0, n}] = std::polar(1.0 / kRoot2, n * phi);
  return PureState(2, t);
}

PureState output_fock(int ports, int photons, double phi) {
  OccupationVector in(static_cast<std::size_t>(ports));
  in.set(0, photons);
  return evolve(PureState::basis(in), build_full_network({ports, phi, true}));
}

double fock_pattern_oracle(int n, int photons, double phi) {
  // (n+e)!/e! / (2^(n-1) n^n) * (1 - (-1)^n cos(n phi))
  double ratio = 1.0;
  for (int k = photons - n + 1; k <= photons; ++k) ratio *= k;
  const double pre = ratio / (std::pow(2.0, n - 1) * std::pow(static_cast<double>(n), n));
  return pre * (1.0 - (n % 2 == 0 ? 1.0 : -1.0) * std::cos(n * phi));
}

}  // namespace

TEST(conventions, names) {
  EXPECT_EQ(to_string(MomentConvention::kDetectorStatistics), "detector");
  EXPECT_EQ(to_string(MomentConvention::kReducedOperator), "reduced");
  EXPECT_EQ(parse_convention("reduced_operator"), MomentConvention::kReducedOperator);
  EXPECT_EQ(parse_convention("detector_statistics"), MomentConvention::kDetectorStatistics);
  EXPECT_FALSE(parse_convention("both").has_value());
}

TEST(moment_result, clamps_rounding_only) {
  EXPECT_EQ(MomentResult::from_moments(0.5, 0.25 - 1e-14).variance, 0.0);
  EXPECT_THROW(MomentResult::from_moments(0.5, 0.2), Error);
  const MomentResult s = MomentResult::from_moments(0.5, 0.5).scaled(0.25);
  EXPECT_DOUBLE_EQ(s.mean, 0.125);
  EXPECT_DOUBLE_EQ(s.second_moment, 0.5 / 16.0);
}

TEST(detector_moments, reference_values) {
  PureState::Terms t;
  t[{2, 0}] = 1.0 / kRoot2;
  t[{0, 2}] = -1.0 / kRoot2;
  EXPECT_EQ(coincidence_moments_detector(PureState(2, t)).mean, 0.0);

  EXPECT_NEAR(coincidence_moments_detector(output_fock(2, 2, kPi / 2)).mean, 0.5, 1e-15);

  for (int ports = 2; ports <= 6; ++ports) {
    for (double phi : {0.1, 1.0, 2.5}) {
      EXPECT_EQ(coincidence_moments_detector(output_fock(ports, 1, phi)).mean, 0.0);
    }
  }
  PureState::Terms loose;
  loose[{1, 1}] = 2.0;
  EXPECT_THROW(coincidence_moments_detector(PureState(2, loose)), Error);
}

TEST(detector_moments, bernoulli_when_photons_equal_ports) {
  for (int ports = 2; ports <= 5; ++ports) {
    for (double phi : {0.3, 1.1, 2.9}) {
      const MomentResult m = coincidence_moments_detector(output_fock(ports, ports, phi));
      EXPECT_NEAR(m.second_moment, m.mean, 1e-15) << ports;
    }
  }
}

TEST(reduced_moments, reference_values) {
  for (int i = 0; i < 25; ++i) {
    const double phi = 2.0 * kPi * (i + 0.5) / 25.0;
    const MomentResult two = coincidence_moments_reduced(arm_fock(2, phi), 2);
    EXPECT_NEAR(two.mean, (1.0 - std::cos(2 * phi)) / 4.0, 1e-15);
    EXPECT_NEAR(two.second_moment, (1.0 - std::cos(2 * phi)) / 4.0, 1e-15);

    const MomentResult three = coincidence_moments_reduced(arm_fock(3, phi), 3);
    EXPECT_NEAR(three.second_moment, 2.0 / 81.0 * (1.0 + std::cos(3 * phi)), 1e-15);

    const MomentResult noon = coincidence_moments_reduced(arm_noon(3, phi), 3);
    EXPECT_NEAR(noon.variance, 4.0 / 81.0 * std::pow(std::sin(3 * phi), 2), 1e-15);
  }
  EXPECT_THROW(coincidence_moments_reduced(PureState::vacuum(3), 2), Error);
}

TEST(reduced_moments, match_dense_oracle) {
  std::mt19937_64 rng(41);
  const DenseTwoMode dense(9);
  for (int trial = 0; trial < 12; ++trial) {
    const PureState psi = oracle::random_state(rng, 2, 7, 6);
    for (int n = 2; n <= 4; ++n) {
      const auto [mean, second] = dense.reduced(psi, n);
      const MomentResult m = coincidence_moments_reduced(psi, n);
      EXPECT_NEAR(m.mean, mean, 1e-12);
      EXPECT_NEAR(m.second_moment, second, 1e-12);
    }
  }
}

TEST(reduced_moments, known_second_moment_difference_fock3) {
  // Same mean, different second moments: 1/18 (Bernoulli) against 2/81.
  for (double phi : {0.2, 0.9, 2.2}) {
    const MomentResult detector = coincidence_moments_detector(output_fock(3, 3, phi));
    const MomentResult reduced = coincidence_moments_reduced(arm_fock(3, phi), 3);
    const double shape = 1.0 + std::cos(3 * phi);
    EXPECT_NEAR(detector.mean, reduced.mean, 1e-15);
    EXPECT_NEAR(detector.second_moment, shape / 18.0, 1e-15);
    EXPECT_NEAR(reduced.second_moment, 2.0 * shape / 81.0, 1e-15);
  }
}

TEST(first_moment_crosscheck, reference_values) {
  for (int i = 0; i < 49; ++i) {
    const double phi = 2.0 * kPi * (i + 0.5) / 49.0;
    EXPECT_NEAR(first_moment_crosscheck(arm_fock(2, phi), 2), (1.0 - std::cos(2 * phi)) / 4.0,
                1e-15);
    EXPECT_NEAR(first_moment_crosscheck(arm_noon(4, phi), 4),
                24.0 / 256.0 * (1.0 - std::cos(4 * phi)), 1e-15);
  }
  EXPECT_EQ(first_moment_crosscheck(PureState::vacuum(2), 3), 0.0);
}

TEST(conventions, first_moments_agree) {
  for (int ports = 2; ports <= 4; ++ports) {
    for (int photons = 0; photons <= ports + 2; ++photons) {
      for (int i = 0; i < 13; ++i) {
        const double phi = 2.0 * kPi * (i + 0.5) / 13.0;
        const double d = coincidence_moments_detector(output_fock(ports, photons, phi)).mean;
        const PureState arm = arm_fock(photons, phi);
        EXPECT_NEAR(coincidence_moments_reduced(arm, ports).mean, d, 1e-11);
        EXPECT_NEAR(first_moment_crosscheck(arm, ports), d, 1e-11);
        EXPECT_NEAR(d, photons < ports ? 0.0 : fock_pattern_oracle(ports, photons, phi), 1e-12);
      }
    }
  }
}

TEST(presence, reference_values) {
  for (double phi : {0.4, 1.3, 2.7}) {
    const PureState two = output_fock(2, 2, phi);
    EXPECT_NEAR(presence_expectation(two), coincidence_moments_detector(two).mean, 1e-15);
    const PureState three = output_fock(2, 3, phi);
    EXPECT_LT(presence_expectation(three), coincidence_moments_detector(three).mean);
    EXPECT_GT(presence_expectation(three), 0.0);
  }
  EXPECT_EQ(presence_expectation(PureState::vacuum(3)), 0.0);
}

TEST(presence, zero_sets_match_coincidence) {
  for (int photons = 2; photons <= 5; ++photons) {
    for (int i = 0; i < 101; ++i) {
      const double phi = 2.0 * kPi * i / 101.0;
      const PureState out = output_fock(2, photons, phi);
      const double p = presence_expectation(out);
      const double mean = coincidence_moments_detector(out).mean;
      EXPECT_EQ(p < 1e-12, mean < 1e-12) << photons << " " << phi;
      EXPECT_LE(p, mean + 1e-15);
      EXPECT_GE(p, 0.0);
    }
  }
}

TEST(superselection, superposition_equals_weighted_fock_and_mixture) {
  // (|2> + |3> + |4>)/sqrt3 in alpha.
  PureState::Terms t;
  for (int j = 2; j <= 4; ++j) t[{j, 0}] = 1.0 / std::sqrt(3.0);
  const PureState in(2, t);
  for (int i = 0; i < 25; ++i) {
    const double phi = 2.0 * kPi * (i + 0.5) / 25.0;
    const PureState out = evolve(in, build_full_network({2, phi, true}));
    double weighted = 0.0;
    for (int j = 2; j <= 4; ++j) {
      weighted += coincidence_moments_detector(output_fock(2, j, phi)).mean / 3.0;
    }
    EXPECT_NEAR(coincidence_moments_detector(out).mean, weighted, 1e-11);
    const PureState arm = evolve(in, balanced_splitter_with_phase(phi));
    EXPECT_NEAR(coincidence_moments_reduced(arm, 2).mean, weighted, 1e-11);
  }
}

TEST(visibility, fock_patterns_have_full_contrast) {
  for (int ports = 2; ports <= 5; ++ports) {
    double lo = INFINITY;
    double hi = 0.0;
    // Dense grid that contains the fringe extremes k pi / N.
    for (int i = 0; i <= 8 * ports; ++i) {
      const double phi = kPi * i / (4.0 * ports);
      const double m = coincidence_moments_detector(output_fock(ports, ports, phi)).mean;
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    EXPECT_NEAR((hi - lo) / (hi + lo), 1.0, 1e-9) << ports;
  }
}
