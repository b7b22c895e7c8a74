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

// Propagation-of-error phase spread, delta_phi = Delta I / |dI/dphi|.
//
// The signal is a trigonometric polynomial in phi of degree at most the input
// photon number, so the slope is taken from the exact Fourier interpolant of
// the sampled mean instead of finite differences. Points where both the slope
// and the variance vanish are removable 0/0 singularities; their value is the
// two-sided limit obtained by Richardson extrapolation toward the point.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nport/experiment.hpp"
#include "nport/observables.hpp"
#include "nport/spectral.hpp"

namespace nport {

inline constexpr double kSlopeFloor = 1e-10;
inline constexpr double kVarianceFloor = 1e-14;

/// M equally spaced points phi_i = offset + 2 pi i / M, M odd.
class PhaseGrid {
 public:
  /// Half-step offset (pi / M) unless `half_step_offset` is false.
  explicit PhaseGrid(int points, bool half_step_offset = true);

  int size() const noexcept { return points_; }
  double offset() const noexcept { return offset_; }
  double step() const noexcept;
  double at(int index) const;

 private:
  int points_;
  double offset_;
};

/// Moments of the observable as a function of phi, plus the largest harmonic
/// the mean can contain.
struct SignalModel {
  std::function<MomentResult(double)> moments;
  int max_harmonic = 0;
};

SignalModel signal_model(const Experiment& experiment);

enum class PointStatus {
  kRegular,
  /// Slope below kSlopeFloor while the variance is not: delta_phi = +inf.
  kInfinite,
  /// 0/0 point resolved as a limit.
  kLimit,
};

struct NoisePoint {
  double phi = 0.0;
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double slope = 0.0;
  double delta_phi = 0.0;
  PointStatus status = PointStatus::kRegular;
};

/// Throws kAliasing when the grid cannot resolve model.max_harmonic.
std::vector<NoisePoint> scan(const SignalModel& model, const PhaseGrid& grid);
std::vector<NoisePoint> scan(const Experiment& experiment, const PhaseGrid& grid);

struct PhaseSpreadMinimum {
  /// Location of the infimum, wrapped into (-pi, pi].
  double phi_star = 0.0;
  double delta_phi_min = 0.0;
  /// True when the infimum is a 0/0 limit rather than an interior minimum.
  bool at_singularity = false;
};

/// Grid scan, then refinement of every local minimum: golden-section search on
/// smooth stretches, Richardson limits at removable singularities. Ties (equal
/// within 1e-9 relative) go to the phase closest to 0, preferring phi > 0.
/// Throws kNoSignal when every grid point is flagged infinite.
PhaseSpreadMinimum min_phase_spread(const SignalModel& model, const PhaseGrid& grid);
PhaseSpreadMinimum min_phase_spread(const Experiment& experiment, const PhaseGrid& grid);

enum class InputFamily {
  /// N photons into N ports (the same for every E).
  kFock,
  /// N + E photons.
  kExcessFock,
  /// Coherent state with mean N + E.
  kCoherent,
  /// Closed form 1/sqrt(N + E).
  kShotNoise,
};

std::string_view to_string(InputFamily family);

struct SurfaceCell {
  int ports = 0;
  int excess = 0;
  bool available = false;
  double delta_phi = 0.0;
  double log10_delta_phi = 0.0;
};

struct NoiseSurface {
  InputFamily family = InputFamily::kFock;
  MomentConvention convention = MomentConvention::kReducedOperator;
  /// Row-major over (ports, excess) in the order the ranges were given.
  std::vector<SurfaceCell> cells;
};

struct SurfaceOptions {
  int photon_cap = kDefaultPhotonCap;
  unsigned threads = 1;
};

/// Minimum phase spread for every (N, E) cell. Cells whose photon number
/// exceeds the cap are marked unavailable instead of failing the run.
NoiseSurface noise_surface(const std::vector<int>& ports, const std::vector<int>& excess,
                           InputFamily family, MomentConvention convention,
                           const SurfaceOptions& options = {});

}  // namespace nport
