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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "nport/error.hpp"

namespace nport {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kNormalization: return "normalization";
    case ErrorCode::kAliasing: return "aliasing";
    case ErrorCode::kNoSignal: return "no_signal";
  }
  return "unknown";
}

namespace {

void check_modes(std::size_t modes) {
  if (modes == 0 || modes > kMaxModes) {
    fail(ErrorCode::kDimension,
         "mode count must be in [1, " + std::to_string(kMaxModes) + "], got " +
             std::to_string(modes));
  }
}

void check_count(int count) {
  if (count < 0) fail(ErrorCode::kInvalidArgument, "negative photon count");
  if (count > std::numeric_limits<std::uint8_t>::max()) {
    fail(ErrorCode::kCapacity, "photon count per mode exceeds 255");
  }
}

void check_cap(int cap) {
  if (cap < 0 || cap > std::numeric_limits<std::uint8_t>::max()) {
    fail(ErrorCode::kInvalidArgument, "photon cap must be in [0, 255]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// OccupationVector

OccupationVector::OccupationVector(std::size_t modes) {
  check_modes(modes);
  modes_ = static_cast<std::uint8_t>(modes);
}

OccupationVector::OccupationVector(std::initializer_list<int> counts)
    : OccupationVector(std::span<const int>(counts.begin(), counts.size())) {}

OccupationVector::OccupationVector(std::span<const int> counts) {
  check_modes(counts.size());
  modes_ = static_cast<std::uint8_t>(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    check_count(counts[i]);
    counts_[i] = static_cast<std::uint8_t>(counts[i]);
  }
}

int OccupationVector::total() const noexcept {
  int sum = 0;
  for (std::size_t i = 0; i < modes_; ++i) sum += counts_[i];
  return sum;
}

OccupationVector OccupationVector::shifted(std::size_t mode, int delta) const {
  OccupationVector out = *this;
  out.set(mode, counts_[mode] + delta);
  return out;
}

void OccupationVector::set(std::size_t mode, int count) {
  if (mode >= modes_) fail(ErrorCode::kDimension, "mode index out of range");
  check_count(count);
  counts_[mode] = static_cast<std::uint8_t>(count);
}

std::vector<int> OccupationVector::to_vector() const {
  return std::vector<int>(counts_.begin(), counts_.begin() + modes_);
}

std::string OccupationVector::to_string() const {
  std::ostringstream out;
  out << '|';
  for (std::size_t i = 0; i < modes_; ++i) {
    if (i) out << ',';
    out << static_cast<int>(counts_[i]);
  }
  out << '>';
  return out.str();
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(std::size_t modes, int photon_cap)
    : modes_(modes), photon_cap_(photon_cap) {
  check_modes(modes);
  check_cap(photon_cap);
}

PureState::PureState(std::size_t modes, Terms terms, int photon_cap)
    : PureState(modes, photon_cap) {
  for (auto it = terms.begin(); it != terms.end();) {
    const auto& [occupation, amp] = *it;
    if (occupation.modes() != modes_) {
      fail(ErrorCode::kDimension, "basis vector " + occupation.to_string() +
                                      " does not have " + std::to_string(modes_) +
                                      " modes");
    }
    if (occupation.total() > photon_cap_) {
      fail(ErrorCode::kCapacity, "basis vector " + occupation.to_string() +
                                     " exceeds photon cap " +
                                     std::to_string(photon_cap_));
    }
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      fail(ErrorCode::kInvalidArgument, "non-finite amplitude");
    }
    if (std::abs(amp) < kPruneThreshold) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  terms_ = std::move(terms);
}

PureState PureState::vacuum(std::size_t modes, int photon_cap) {
  Terms terms;
  terms.emplace(OccupationVector(modes), Amplitude{1.0, 0.0});
  return PureState(modes, std::move(terms), photon_cap);
}

PureState PureState::basis(const OccupationVector& occupation, int photon_cap) {
  Terms terms;
  terms.emplace(occupation, Amplitude{1.0, 0.0});
  return PureState(occupation.modes(), std::move(terms), photon_cap);
}

Amplitude PureState::amplitude(const OccupationVector& occupation) const {
  auto it = terms_.find(occupation);
  return it == terms_.end() ? Amplitude{} : it->second;
}

double PureState::norm() const {
  double sum = 0.0;
  for (const auto& [occ, amp] : terms_) sum += std::norm(amp);
  return std::sqrt(sum);
}

bool PureState::is_normalized() const { return std::abs(norm() - 1.0) <= kNormTolerance; }

int PureState::max_photons() const {
  int best = 0;
  for (const auto& [occ, amp] : terms_) best = std::max(best, occ.total());
  return best;
}

PureState PureState::normalized() const {
  const double n = norm();
  if (n == 0.0) fail(ErrorCode::kNormalization, "cannot normalize the zero state");
  return scaled(1.0 / n);
}

PureState PureState::scaled(Amplitude factor) const {
  Terms out = terms_;
  for (auto& [occ, amp] : out) amp *= factor;
  return PureState(modes_, std::move(out), photon_cap_);
}

PureState PureState::with_cap(int photon_cap) const {
  return PureState(modes_, terms_, photon_cap);
}

// ---------------------------------------------------------------------------
// MixedEnsemble

MixedEnsemble::MixedEnsemble(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) fail(ErrorCode::kInvalidArgument, "empty ensemble");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight > 0.0 && c.weight <= 1.0)) {
      fail(ErrorCode::kInvalidArgument, "ensemble weight outside (0, 1]");
    }
    if (c.state.modes() != components_.front().state.modes()) {
      fail(ErrorCode::kDimension, "ensemble components differ in mode count");
    }
    if (!c.state.is_normalized()) {
      fail(ErrorCode::kNormalization, "ensemble component is not normalized");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    fail(ErrorCode::kNormalization, "ensemble weights do not sum to 1");
  }
}

MixedEnsemble MixedEnsemble::pure(PureState state) {
  std::vector<Component> one;
  one.push_back({1.0, std::move(state)});
  return MixedEnsemble(std::move(one));
}

// ---------------------------------------------------------------------------
// Ladder operators

PureState apply_creation_power(const PureState& state, std::size_t mode, int power) {
  if (mode >= state.modes()) fail(ErrorCode::kDimension, "creation mode out of range");
  if (power < 0) fail(ErrorCode::kInvalidArgument, "negative operator power");
  PureState::Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    if (occ.total() + power > state.photon_cap()) {
      fail(ErrorCode::kCapacity, "creation would exceed photon cap " +
                                     std::to_string(state.photon_cap()));
    }
    const int n = occ[mode];
    double factor = 1.0;
    for (int k = 1; k <= power; ++k) factor *= std::sqrt(static_cast<double>(n + k));
    out.emplace(occ.shifted(mode, power), amp * factor);
  }
  return PureState(state.modes(), std::move(out), state.photon_cap());
}

PureState apply_annihilation_power(const PureState& state, std::size_t mode, int power) {
  if (mode >= state.modes()) fail(ErrorCode::kDimension, "annihilation mode out of range");
  if (power < 0) fail(ErrorCode::kInvalidArgument, "negative operator power");
  PureState::Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    const int n = occ[mode];
    if (n < power) continue;
    double factor = 1.0;
    for (int k = 0; k < power; ++k) factor *= std::sqrt(static_cast<double>(n - k));
    out.emplace(occ.shifted(mode, -power), amp * factor);
  }
  return PureState(state.modes(), std::move(out), state.photon_cap());
}

PureState apply_creation(const PureState& state, std::size_t mode) {
  return apply_creation_power(state, mode, 1);
}

PureState apply_annihilation(const PureState& state, std::size_t mode) {
  return apply_annihilation_power(state, mode, 1);
}

PureState linear_combination(Amplitude a, const PureState& lhs, Amplitude b,
                             const PureState& rhs) {
  if (lhs.modes() != rhs.modes()) fail(ErrorCode::kDimension, "mode count mismatch");
  PureState::Terms out;
  for (const auto& [occ, amp] : lhs.terms()) out[occ] += a * amp;
  for (const auto& [occ, amp] : rhs.terms()) out[occ] += b * amp;
  return PureState(lhs.modes(), std::move(out),
                   std::max(lhs.photon_cap(), rhs.photon_cap()));
}

Amplitude inner_product(const PureState& bra, const PureState& ket) {
  if (bra.modes() != ket.modes()) {
    fail(ErrorCode::kDimension, "inner product of states with " +
                                    std::to_string(bra.modes()) + " and " +
                                    std::to_string(ket.modes()) + " modes");
  }
  const auto& small = bra.size() <= ket.size() ? bra.terms() : ket.terms();
  const auto& large = bra.size() <= ket.size() ? ket.terms() : bra.terms();
  const bool bra_is_small = bra.size() <= ket.size();
  Amplitude sum{};
  for (const auto& [occ, amp] : small) {
    auto it = large.find(occ);
    if (it == large.end()) continue;
    sum += bra_is_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return sum;
}

NumberDistribution number_distribution(const PureState& state) {
  if (!state.is_normalized()) {
    fail(ErrorCode::kNormalization,
         "number distribution requires a normalized state (norm " +
             std::to_string(state.norm()) + ")");
  }
  NumberDistribution out;
  for (const auto& [occ, amp] : state.terms()) out.emplace_hint(out.end(), occ, std::norm(amp));
  return out;
}

}  // namespace nport
