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

// Multi-mode bosonic pure states in the Fock basis.
//
// A PureState is a sparse map from occupation vectors to complex amplitudes.
// All operations return new values; nothing is mutated after construction,
// so states can be shared freely between threads.

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nport {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultPhotonCap = 24;
inline constexpr std::size_t kMaxModes = 16;
inline constexpr double kPruneThreshold = 1e-15;
inline constexpr double kNormTolerance = 1e-12;

/// Photon counts per mode. Fixed inline storage; at most kMaxModes modes and
/// 255 photons in any single mode.
class OccupationVector {
 public:
  OccupationVector() = default;
  explicit OccupationVector(std::size_t modes);
  OccupationVector(std::initializer_list<int> counts);
  explicit OccupationVector(std::span<const int> counts);

  std::size_t modes() const noexcept { return modes_; }
  int operator[](std::size_t mode) const { return counts_[mode]; }
  int total() const noexcept;

  /// Copy with one entry changed by `delta`; throws if the entry would go
  /// negative or overflow.
  OccupationVector shifted(std::size_t mode, int delta) const;
  void set(std::size_t mode, int count);

  std::vector<int> to_vector() const;
  std::string to_string() const;

  friend auto operator<=>(const OccupationVector&, const OccupationVector&) = default;
  friend bool operator==(const OccupationVector&, const OccupationVector&) = default;

 private:
  std::array<std::uint8_t, kMaxModes> counts_{};
  std::uint8_t modes_ = 0;
};

/// Sparse superposition over Fock basis vectors. The empty map is the zero
/// vector; it is legal as an intermediate value only.
class PureState {
 public:
  using Terms = std::map<OccupationVector, Amplitude>;

  /// Zero state on `modes` modes.
  explicit PureState(std::size_t modes, int photon_cap = kDefaultPhotonCap);

  /// Validates keys (mode count, cap) and amplitudes (finite); prunes
  /// amplitudes below kPruneThreshold.
  PureState(std::size_t modes, Terms terms, int photon_cap = kDefaultPhotonCap);

  static PureState vacuum(std::size_t modes, int photon_cap = kDefaultPhotonCap);
  static PureState basis(const OccupationVector& occupation,
                         int photon_cap = kDefaultPhotonCap);

  std::size_t modes() const noexcept { return modes_; }
  int photon_cap() const noexcept { return photon_cap_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Amplitude amplitude(const OccupationVector& occupation) const;
  double norm() const;
  bool is_normalized() const;
  /// Largest total photon number over the stored terms (0 for the zero state).
  int max_photons() const;

  PureState normalized() const;
  PureState scaled(Amplitude factor) const;
  PureState with_cap(int photon_cap) const;

 private:
  std::size_t modes_;
  int photon_cap_;
  Terms terms_;
};

/// Convex combination of pure states.
class MixedEnsemble {
 public:
  struct Component {
    double weight;
    PureState state;
  };

  explicit MixedEnsemble(std::vector<Component> components);
  static MixedEnsemble pure(PureState state);

  const std::vector<Component>& components() const noexcept { return components_; }
  std::size_t modes() const { return components_.front().state.modes(); }

  template <typename Fn>
  double expectation(Fn&& observable) const {
    double total = 0.0;
    for (const auto& c : components_) total += c.weight * observable(c.state);
    return total;
  }

 private:
  std::vector<Component> components_;
};

PureState apply_creation(const PureState& state, std::size_t mode);
PureState apply_annihilation(const PureState& state, std::size_t mode);
/// a^power applied to `state`.
PureState apply_annihilation_power(const PureState& state, std::size_t mode, int power);
PureState apply_creation_power(const PureState& state, std::size_t mode, int power);

/// Sum of two states on the same modes; a * lhs + b * rhs.
PureState linear_combination(Amplitude a, const PureState& lhs, Amplitude b,
                             const PureState& rhs);

Amplitude inner_product(const PureState& bra, const PureState& ket);

using NumberDistribution = std::map<OccupationVector, double>;

/// |amplitude|^2 per basis vector. Requires a normalized state.
NumberDistribution number_distribution(const PureState& state);

}  // namespace nport
