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

#include "nport/fock.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nport/error.hpp"
#include "test_support.hpp"

using namespace nport;

namespace {

const double kRoot2 = std::sqrt(2.0);

void expect_amp(const PureState& s, OccupationVector occ, Amplitude want, double tol = 1e-15) {
  const Amplitude got = s.amplitude(occ);
  EXPECT_NEAR(got.real(), want.real(), tol) << occ.to_string();
  EXPECT_NEAR(got.imag(), want.imag(), tol) << occ.to_string();
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST(occupation, basics) {
  const OccupationVector v{2, 0, 1};
  EXPECT_EQ(v.modes(), 3u);
  EXPECT_EQ(v.total(), 3);
  EXPECT_EQ(v.to_string(), "|2,0,1>");
  EXPECT_EQ(v.shifted(1, 2), (OccupationVector{2, 2, 1}));
  EXPECT_THROW(v.shifted(1, -1), Error);
  EXPECT_THROW((OccupationVector{-1, 0}), Error);
  EXPECT_LT((OccupationVector{0, 1}), (OccupationVector{1, 0}));
}

TEST(pure_state, pruning_and_validation) {
  PureState::Terms t;
  t[{1, 0}] = 1.0;
  t[{0, 1}] = 1e-16;
  const PureState s(2, t);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.is_normalized());

  PureState::Terms bad;
  bad[{1, 0, 0}] = 1.0;
  EXPECT_EQ(code_of([&] { PureState(2, bad); }), ErrorCode::kDimension);

  PureState::Terms nan_terms;
  nan_terms[{1, 0}] = Amplitude(NAN, 0.0);
  EXPECT_EQ(code_of([&] { PureState(2, nan_terms); }), ErrorCode::kInvalidArgument);

  PureState::Terms too_many;
  too_many[{3, 0}] = 1.0;
  EXPECT_EQ(code_of([&] { PureState(2, too_many, 2); }), ErrorCode::kCapacity);
}

TEST(apply_creation, reference_values) {
  const PureState vac = PureState::vacuum(2);
  const PureState one = apply_creation(vac, 0);
  expect_amp(one, {1, 0}, 1.0);
  EXPECT_EQ(one.size(), 1u);

  const PureState two = apply_creation(one, 0);
  expect_amp(two, {2, 0}, kRoot2);

  PureState::Terms t;
  t[{1, 0}] = 1.0 / kRoot2;
  t[{0, 1}] = 1.0 / kRoot2;
  const PureState out = apply_creation(PureState(2, t), 1);
  expect_amp(out, {1, 1}, 1.0 / kRoot2);
  expect_amp(out, {0, 2}, 1.0);
  EXPECT_EQ(out.size(), 2u);
}

TEST(apply_creation, capacity_error) {
  const PureState s = PureState::basis({2, 0}, 2);
  EXPECT_EQ(code_of([&] { apply_creation(s, 1); }), ErrorCode::kCapacity);
  EXPECT_EQ(code_of([&] { apply_creation(s, 2); }), ErrorCode::kDimension);
}

TEST(apply_annihilation, reference_values) {
  EXPECT_TRUE(apply_annihilation(PureState::vacuum(2), 0).is_zero());
  const PureState two = PureState::basis({2, 0});
  const PureState one = apply_annihilation(two, 0);
  expect_amp(one, {1, 0}, kRoot2);
  const PureState zero = apply_annihilation_power(two, 0, 2);
  expect_amp(zero, {0, 0}, kRoot2);
  EXPECT_EQ(zero.size(), 1u);
}

TEST(ladder, consistency_on_random_states) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState psi = oracle::random_state(rng, 3, 5);
    for (std::size_t m = 0; m < 3; ++m) {
      const PureState back = apply_annihilation(apply_creation(psi, m), m);
      for (const auto& [occ, amp] : psi.terms()) {
        const Amplitude want = amp * static_cast<double>(occ[m] + 1);
        expect_amp(back, occ, want, 1e-13);
      }
      EXPECT_EQ(back.size(), psi.size());
    }
  }
}

TEST(inner_product, reference_values) {
  std::mt19937_64 rng(5);
  const PureState psi = oracle::random_state(rng, 3, 4);
  const Amplitude self = inner_product(psi, psi);
  EXPECT_NEAR(self.real(), 1.0, 1e-15);
  EXPECT_NEAR(self.imag(), 0.0, 1e-15);

  const Amplitude orth = inner_product(PureState::basis({1, 0}), PureState::basis({0, 1}));
  EXPECT_EQ(orth, Amplitude(0.0));

  for (int trial = 0; trial < 20; ++trial) {
    const PureState a = oracle::random_state(rng, 3, 3, 6);
    const PureState b = oracle::random_state(rng, 3, 3, 6);
    const Amplitude ab = inner_product(a, b);
    const Amplitude ba = inner_product(b, a);
    EXPECT_NEAR(ab.real(), ba.real(), 1e-15);
    EXPECT_NEAR(ab.imag(), -ba.imag(), 1e-15);
  }
  EXPECT_EQ(code_of([&] { inner_product(PureState::vacuum(2), PureState::vacuum(3)); }),
            ErrorCode::kDimension);
}

TEST(number_distribution, reference_values) {
  const auto d11 = number_distribution(PureState::basis({1, 1}));
  ASSERT_EQ(d11.size(), 1u);
  EXPECT_DOUBLE_EQ(d11.at({1, 1}), 1.0);

  PureState::Terms t;
  t[{2, 0}] = 1.0 / kRoot2;
  t[{0, 2}] = -1.0 / kRoot2;
  const auto hom = number_distribution(PureState(2, t));
  EXPECT_NEAR(hom.at({2, 0}), 0.5, 1e-15);
  EXPECT_NEAR(hom.at({0, 2}), 0.5, 1e-15);

  const auto vac = number_distribution(PureState::vacuum(4));
  EXPECT_DOUBLE_EQ(vac.at(OccupationVector(4)), 1.0);

  PureState::Terms loose;
  loose[{1, 0}] = 2.0;
  EXPECT_EQ(code_of([&] { number_distribution(PureState(2, loose)); }),
            ErrorCode::kNormalization);
}

TEST(number_distribution, sums_to_one) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    double total = 0.0;
    for (const auto& [occ, p] : number_distribution(oracle::random_state(rng, 4, 6, 8))) {
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(mixed_ensemble, weights_and_expectation) {
  const MixedEnsemble e({{0.25, PureState::basis({1, 0})}, {0.75, PureState::basis({0, 2})}});
  const double mean_a2 = e.expectation([](const PureState& s) {
    return static_cast<double>(s.terms().begin()->first[1]);
  });
  EXPECT_DOUBLE_EQ(mean_a2, 1.5);
  EXPECT_EQ(code_of([] {
              MixedEnsemble({{0.5, PureState::basis({1, 0})}, {0.6, PureState::basis({0, 1})}});
            }),
            ErrorCode::kNormalization);
  EXPECT_EQ(code_of([] { MixedEnsemble({{1.0, PureState::vacuum(2).scaled(0.0)}}); }),
            ErrorCode::kNormalization);
}
