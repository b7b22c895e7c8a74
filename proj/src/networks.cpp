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

#include "nport/networks.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "nport/combinatorics.hpp"
#include "nport/error.hpp"

namespace nport {

ModeUnitary::ModeUnitary(Matrix entries, double tolerance) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    fail(ErrorCode::kDimension, "mode unitary must be square with dim >= 1");
  }
  const double residual = unitarity_residual();
  if (!(residual <= tolerance)) {
    fail(ErrorCode::kInvalidArgument,
         "matrix is not unitary (residual " + std::to_string(residual) + ")");
  }
}

ModeUnitary ModeUnitary::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (n == 0) fail(ErrorCode::kDimension, "identity of dimension 0");
  return ModeUnitary(Matrix::Identity(n, n));
}

ModeUnitary ModeUnitary::adjoint() const { return ModeUnitary(entries_.adjoint()); }

double ModeUnitary::unitarity_residual() const {
  const Matrix gram = entries_ * entries_.adjoint();
  const Matrix eye = Matrix::Identity(entries_.rows(), entries_.cols());
  return (gram - eye).cwiseAbs().maxCoeff();
}

ModeUnitary balanced_splitter_with_phase(double phase) {
  const double s = 1.0 / std::numbers::sqrt2;
  const Amplitude shift = std::polar(1.0, -phase);
  ModeUnitary::Matrix m(2, 2);
  m << s, s, shift * s, -shift * s;
  return ModeUnitary(std::move(m));
}

ModeUnitary dft_nport(int ports) {
  if (ports < 1) fail(ErrorCode::kDimension, "N-port needs at least one port");
  const double scale = 1.0 / std::sqrt(static_cast<double>(ports));
  ModeUnitary::Matrix m(ports, ports);
  for (int j = 0; j < ports; ++j) {
    for (int k = 0; k < ports; ++k) {
      // Reduce j*k mod N first so the angle stays small and exact.
      const int r = (j * k) % ports;
      m(j, k) = std::polar(scale, 2.0 * std::numbers::pi * r / ports);
    }
  }
  return ModeUnitary(std::move(m), 1e-13);
}

ModeUnitary embed(const ModeUnitary& unitary, std::span<const std::size_t> target_modes,
                  std::size_t total) {
  if (target_modes.size() != unitary.dim() || unitary.dim() > total) {
    fail(ErrorCode::kDimension, "embed: target mode count does not match unitary dim");
  }
  std::vector<bool> used(total, false);
  for (std::size_t t : target_modes) {
    if (t >= total) fail(ErrorCode::kDimension, "embed: target mode out of range");
    if (used[t]) fail(ErrorCode::kDimension, "embed: duplicate target mode");
    used[t] = true;
  }
  const auto n = static_cast<Eigen::Index>(total);
  ModeUnitary::Matrix m = ModeUnitary::Matrix::Identity(n, n);
  for (std::size_t r = 0; r < target_modes.size(); ++r) {
    for (std::size_t c = 0; c < target_modes.size(); ++c) {
      m(static_cast<Eigen::Index>(target_modes[r]), static_cast<Eigen::Index>(target_modes[c])) =
          unitary(r, c);
    }
  }
  return ModeUnitary(std::move(m));
}

ModeUnitary compose(const ModeUnitary& first, const ModeUnitary& then) {
  if (first.dim() != then.dim()) fail(ErrorCode::kDimension, "compose: dim mismatch");
  return ModeUnitary(then.matrix() * first.matrix());
}

namespace {

using Polynomial = std::vector<std::pair<OccupationVector, Amplitude>>;

// (sum_j weights[j] x_j)^power expanded over compositions of `power`.
Polynomial expand_power(const std::vector<Amplitude>& weights, int power) {
  Polynomial out;
  const std::size_t dim = weights.size();
  std::vector<int> parts(dim, 0);
  for_each_composition(power, dim, parts, [&](const std::vector<int>& m) {
    Amplitude coeff = multinomial(m);
    for (std::size_t j = 0; j < dim; ++j) {
      for (int p = 0; p < m[j]; ++p) coeff *= weights[j];
    }
    if (coeff != Amplitude{}) out.emplace_back(OccupationVector(std::span<const int>(m)), coeff);
  });
  return out;
}

OccupationVector add_exponents(const OccupationVector& a, const OccupationVector& b) {
  OccupationVector out = a;
  for (std::size_t j = 0; j < a.modes(); ++j) out.set(j, a[j] + b[j]);
  return out;
}

}  // namespace

PureState evolve(const PureState& state, const ModeUnitary& unitary) {
  const std::size_t dim = unitary.dim();
  if (state.modes() != dim) {
    fail(ErrorCode::kDimension, "evolve: state has " + std::to_string(state.modes()) +
                                    " modes, unitary has dim " + std::to_string(dim));
  }
  if (!state.is_normalized()) fail(ErrorCode::kNormalization, "evolve: input not normalized");

  // Substitution weights: a_k^dag = sum_j conj(U(j,k)) A_j^dag.
  std::vector<std::vector<Amplitude>> weights(dim, std::vector<Amplitude>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) weights[k][j] = std::conj(unitary(j, k));
  }

  std::map<std::pair<std::size_t, int>, Polynomial> power_cache;
  auto power_of = [&](std::size_t mode, int n) -> const Polynomial& {
    auto key = std::make_pair(mode, n);
    auto it = power_cache.find(key);
    if (it == power_cache.end()) it = power_cache.emplace(key, expand_power(weights[mode], n)).first;
    return it->second;
  };

  PureState::Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    std::map<OccupationVector, Amplitude> poly;
    poly.emplace(OccupationVector(dim), Amplitude{1.0, 0.0});
    double input_norm = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const int n = occ[k];
      if (n == 0) continue;
      input_norm *= sqrt_factorial(n);
      const Polynomial& factor = power_of(k, n);
      std::map<OccupationVector, Amplitude> next;
      for (const auto& [lhs_exp, lhs_coeff] : poly) {
        for (const auto& [rhs_exp, rhs_coeff] : factor) {
          next[add_exponents(lhs_exp, rhs_exp)] += lhs_coeff * rhs_coeff;
        }
      }
      poly = std::move(next);
    }
    // prod_j (A_j^dag)^{e_j} |0> = sqrt(prod e_j!) |e>
    for (const auto& [exp, coeff] : poly) {
      double output_norm = 1.0;
      for (std::size_t j = 0; j < dim; ++j) output_norm *= sqrt_factorial(exp[j]);
      out[exp] += amp * coeff * (output_norm / input_norm);
    }
  }
  return PureState(dim, std::move(out), state.photon_cap());
}

ModeUnitary build_full_network(const NetworkSpec& spec) {
  if (spec.ports < 2) fail(ErrorCode::kInvalidArgument, "network needs at least 2 ports");
  if (!std::isfinite(spec.phase)) fail(ErrorCode::kInvalidArgument, "phase must be finite");
  const auto ports = static_cast<std::size_t>(spec.ports);
  ModeUnitary fourier = dft_nport(spec.ports);
  if (!spec.include_front_splitter) return fourier;
  const std::size_t arms[] = {0, 1};
  return compose(embed(balanced_splitter_with_phase(spec.phase), arms, ports), fourier);
}

}  // namespace nport
