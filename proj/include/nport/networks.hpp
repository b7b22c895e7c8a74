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

// Passive linear-optical networks acting on creation operators.
//
// Convention: rows index output modes, columns index input modes, and the
// output creation operators are A_j^dag = sum_k U(j, k) a_k^dag. Evolving a
// state therefore substitutes the inverse relation a_k^dag = sum_j
// conj(U(j, k)) A_j^dag into each basis monomial.

#include <Eigen/Dense>
#include <cstddef>
#include <span>

#include "nport/fock.hpp"

namespace nport {

inline constexpr double kUnitarityTolerance = 1e-12;

class ModeUnitary {
 public:
  using Matrix = Eigen::MatrixXcd;

  /// Throws kDimension for non-square or empty input and kInvalidArgument when
  /// the unitarity residual exceeds `tolerance`.
  explicit ModeUnitary(Matrix entries, double tolerance = kUnitarityTolerance);

  static ModeUnitary identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }
  Amplitude operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  ModeUnitary adjoint() const;

  /// max |(U U^dag - I)_{jk}|
  double unitarity_residual() const;

 private:
  Matrix entries_;
};

struct NetworkSpec {
  int ports = 2;
  double phase = 0.0;
  bool include_front_splitter = true;
};

/// Two-mode balanced splitter followed by the phase shift on the second arm:
/// a1^dag = (alpha^dag + beta^dag)/sqrt2, a2^dag = e^{-i phase}(alpha^dag - beta^dag)/sqrt2.
ModeUnitary balanced_splitter_with_phase(double phase);

/// Balanced N-port, (F_N)_{jk} = exp(2 pi i j k / N)/sqrt(N) with 0-based j, k.
ModeUnitary dft_nport(int ports);

/// Places `unitary` on `target_modes` (0-based) of a `total`-mode system,
/// identity elsewhere.
ModeUnitary embed(const ModeUnitary& unitary, std::span<const std::size_t> target_modes,
                  std::size_t total);

/// `first` followed by `then`: the product then * first.
ModeUnitary compose(const ModeUnitary& first, const ModeUnitary& then);

/// Exact multinomial evolution. The input must be normalized; the output is
/// normalized to kNormTolerance and carries the input photon cap.
PureState evolve(const PureState& state, const ModeUnitary& unitary);

/// Front splitter on modes 0-1 (when requested) followed by the N-port.
ModeUnitary build_full_network(const NetworkSpec& spec);

}  // namespace nport
