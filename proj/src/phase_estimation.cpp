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

#include "nport/phase_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "nport/error.hpp"
#include "nport/parallel.hpp"

namespace nport {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double w = std::remainder(phi, kTwoPi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

// Phase spread as a function of phi, with the slope from the interpolant.
class SpreadFunction {
 public:
  SpreadFunction(const SignalModel& model, const TrigInterpolant& mean)
      : model_(model), mean_(mean) {}

  double slope(double phi) const { return mean_.derivative(phi); }

  double operator()(double phi) const {
    const double s = std::abs(slope(phi));
    if (s <= kSlopeFloor) return kInf;
    return std::sqrt(model_.moments(phi).variance) / s;
  }

  // Symmetric two-sided limit at phi0: average of the values at phi0 +/- h
  // is even in h, so Neville extrapolation runs in h^2.
  double limit(double phi0, double h0) const {
    constexpr int kLevels = 6;
    double x[kLevels];
    double table[kLevels];
    for (int k = 0; k < kLevels; ++k) {
      const double h = h0 / static_cast<double>(1 << k);
      x[k] = h * h;
      table[k] = 0.5 * ((*this)(phi0 + h) + (*this)(phi0 - h));
      // No finite approach from either side: the signal is flat here.
      if (!std::isfinite(table[k])) return kInf;
    }
    for (int level = 1; level < kLevels; ++level) {
      for (int k = kLevels - 1; k >= level; --k) {
        table[k] = (x[k - level] * table[k] - x[k] * table[k - 1]) / (x[k - level] - x[k]);
      }
    }
    return table[kLevels - 1];
  }

 private:
  const SignalModel& model_;
  const TrigInterpolant& mean_;
};

struct Candidate {
  double phi;
  double value;
  bool singular;
};

Candidate golden_section(const SpreadFunction& f, double a, double b) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && (b - a) > 1e-12; ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Candidate{c, fc, false} : Candidate{d, fd, false};
}

// Root of the slope inside [a, b], which must bracket a sign change.
double bisect_slope(const SpreadFunction& f, double a, double b) {
  double fa = f.slope(a);
  for (int iter = 0; iter < 100 && b - a > 1e-15; ++iter) {
    const double mid = 0.5 * (a + b);
    const double fm = f.slope(mid);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Prefers the smaller value; within 1e-9 relative, the phase nearest 0 and
// then the positive one.
bool better(const Candidate& lhs, const Candidate& rhs) {
  const double scale = std::max(std::abs(lhs.value), std::abs(rhs.value));
  if (std::abs(lhs.value - rhs.value) > 1e-9 * scale) return lhs.value < rhs.value;
  const double dl = std::abs(wrap_phase(lhs.phi));
  const double dr = std::abs(wrap_phase(rhs.phi));
  if (std::abs(dl - dr) > 1e-9) return dl < dr;
  return wrap_phase(lhs.phi) > wrap_phase(rhs.phi);
}

}  // namespace

PhaseGrid::PhaseGrid(int points, bool half_step_offset) : points_(points) {
  if (points < 3 || points % 2 == 0) {
    fail(ErrorCode::kInvalidArgument, "phase grid needs an odd number of points >= 3");
  }
  offset_ = half_step_offset ? std::numbers::pi / points : 0.0;
}

double PhaseGrid::step() const noexcept { return kTwoPi / points_; }

double PhaseGrid::at(int index) const { return offset_ + step() * index; }

SignalModel signal_model(const Experiment& experiment) {
  return {[&experiment](double phi) { return experiment.moments(phi); },
          experiment.max_photons()};
}

std::vector<NoisePoint> scan(const SignalModel& model, const PhaseGrid& grid) {
  if (grid.size() < 2 * model.max_harmonic + 1) {
    fail(ErrorCode::kAliasing, "phase grid of " + std::to_string(grid.size()) +
                                   " points cannot resolve harmonic " +
                                   std::to_string(model.max_harmonic));
  }
  std::vector<NoisePoint> points(static_cast<std::size_t>(grid.size()));
  std::vector<double> means(points.size());
  for (int i = 0; i < grid.size(); ++i) {
    auto& p = points[static_cast<std::size_t>(i)];
    p.phi = grid.at(i);
    const MomentResult m = model.moments(p.phi);
    p.mean = m.mean;
    p.second_moment = m.second_moment;
    p.variance = m.variance;
    means[static_cast<std::size_t>(i)] = m.mean;
  }
  const TrigInterpolant interpolant(means, model.max_harmonic, grid.offset());
  const SpreadFunction spread(model, interpolant);
  for (auto& p : points) {
    p.slope = interpolant.derivative(p.phi);
    if (std::abs(p.slope) > kSlopeFloor) {
      p.delta_phi = std::sqrt(p.variance) / std::abs(p.slope);
    } else if (p.variance > kVarianceFloor) {
      p.status = PointStatus::kInfinite;
      p.delta_phi = kInf;
    } else {
      p.delta_phi = spread.limit(p.phi, grid.step() / 32.0);
      p.status = std::isfinite(p.delta_phi) ? PointStatus::kLimit : PointStatus::kInfinite;
    }
  }
  return points;
}

std::vector<NoisePoint> scan(const Experiment& experiment, const PhaseGrid& grid) {
  return scan(signal_model(experiment), grid);
}

PhaseSpreadMinimum min_phase_spread(const SignalModel& model, const PhaseGrid& grid) {
  const std::vector<NoisePoint> points = scan(model, grid);
  std::vector<double> means;
  std::vector<double> seconds;
  means.reserve(points.size());
  seconds.reserve(points.size());
  for (const auto& p : points) {
    means.push_back(p.mean);
    seconds.push_back(p.second_moment);
  }
  // Both moments are trigonometric polynomials of the same degree as the
  // signal, so the grid determines them everywhere and the refinement below
  // never has to re-simulate the network.
  const TrigInterpolant interpolant(means, model.max_harmonic, grid.offset());
  const TrigInterpolant second_interpolant(seconds, model.max_harmonic, grid.offset());
  const SignalModel fitted{[&](double phi) {
                             MomentResult m;
                             m.mean = interpolant.value(phi);
                             m.second_moment = second_interpolant.value(phi);
                             m.variance = std::max(0.0, m.second_moment - m.mean * m.mean);
                             return m;
                           },
                           model.max_harmonic};
  // Limits at 0/0 points divide two vanishing quantities, where interpolation
  // rounding would be amplified, so those use the model itself.
  const SpreadFunction spread(model, interpolant);
  const SpreadFunction smooth(fitted, interpolant);

  const int m = grid.size();
  auto value = [&](int i) { return points[static_cast<std::size_t>((i % m + m) % m)].delta_phi; };
  double grid_min = kInf;
  for (const auto& p : points) grid_min = std::min(grid_min, p.delta_phi);
  if (!std::isfinite(grid_min)) {
    fail(ErrorCode::kNoSignal, "phase spread is infinite at every grid point");
  }

  const double step = grid.step();
  const double gap = step / 32.0;
  std::optional<Candidate> best;
  auto offer = [&](const Candidate& c) {
    if (std::isfinite(c.value) && (!best || better(c, *best))) best = c;
  };

  for (int i = 0; i < m; ++i) {
    const double v = value(i);
    if (!std::isfinite(v) || v > value(i - 1) || v > value(i + 1)) continue;
    if (v > 2.0 * grid_min) continue;
    const double phi = grid.at(i);
    offer({phi, v, points[static_cast<std::size_t>(i)].status == PointStatus::kLimit});

    const double a = phi - step;
    const double b = phi + step;
    // Removable singularities: slope roots where the variance also vanishes.
    std::vector<double> singular;
    constexpr int kPieces = 16;
    for (int k = 0; k < kPieces; ++k) {
      const double lo = a + (b - a) * k / kPieces;
      const double hi = a + (b - a) * (k + 1) / kPieces;
      const double s_lo = spread.slope(lo);
      const double s_hi = spread.slope(hi);
      if ((s_lo < 0.0) == (s_hi < 0.0) && s_hi != 0.0) continue;
      const double root = bisect_slope(spread, lo, hi);
      if (fitted.moments(root).variance <= kVarianceFloor) {
        singular.push_back(root);
        offer({root, spread.limit(root, gap), true});
      }
    }
    // Golden-section on the smooth pieces between singular points.
    std::sort(singular.begin(), singular.end());
    double left = a;
    for (double s : singular) {
      if (s - gap > left) offer(golden_section(smooth, left, s - gap));
      left = std::max(left, s + gap);
    }
    if (b > left) offer(golden_section(smooth, left, b));
  }
  if (!best) fail(ErrorCode::kNoSignal, "no finite phase spread found");
  return {wrap_phase(best->phi), best->value, best->singular};
}

PhaseSpreadMinimum min_phase_spread(const Experiment& experiment, const PhaseGrid& grid) {
  return min_phase_spread(signal_model(experiment), grid);
}

std::string_view to_string(InputFamily family) {
  switch (family) {
    case InputFamily::kFock: return "fock";
    case InputFamily::kExcessFock: return "excess";
    case InputFamily::kCoherent: return "coherent";
    case InputFamily::kShotNoise: return "shot";
  }
  return "unknown";
}

NoiseSurface noise_surface(const std::vector<int>& ports, const std::vector<int>& excess,
                           InputFamily family, MomentConvention convention,
                           const SurfaceOptions& options) {
  if (ports.empty() || excess.empty()) {
    fail(ErrorCode::kInvalidArgument, "noise surface needs non-empty N and E ranges");
  }
  for (int n : ports) {
    if (n < 2) fail(ErrorCode::kInvalidArgument, "noise surface needs N >= 2");
  }
  for (int e : excess) {
    if (e < 0) fail(ErrorCode::kInvalidArgument, "noise surface needs E >= 0");
  }

  auto evaluate = [&](int n, int e) -> SurfaceCell {
    SurfaceCell cell{n, e, false, 0.0, 0.0};
    if (family == InputFamily::kShotNoise) {
      cell.available = true;
      cell.delta_phi = noise_closed_forms(n, e).shot;
    } else {
      ExperimentSpec spec;
      spec.ports = n;
      spec.convention = convention;
      spec.photon_cap = options.photon_cap;
      switch (family) {
        case InputFamily::kFock: spec.input = FockInput{n}; break;
        case InputFamily::kExcessFock: spec.input = FockInput{n + e}; break;
        default: spec.input = CoherentInput{static_cast<double>(n + e)}; break;
      }
      try {
        const Experiment experiment(spec);
        const PhaseGrid grid(experiment.default_phase_points());
        cell.delta_phi = min_phase_spread(experiment, grid).delta_phi_min;
        cell.available = true;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::kCapacity && err.code() != ErrorCode::kDimension &&
            err.code() != ErrorCode::kNoSignal) {
          throw;
        }
      }
    }
    if (cell.available) cell.log10_delta_phi = std::log10(cell.delta_phi);
    return cell;
  };

  // The Fock sheet does not depend on E; evaluate once per N.
  std::map<int, SurfaceCell> fock_rows;
  if (family == InputFamily::kFock) {
    const auto rows = parallel_map(
        ports.size(), [&](std::size_t i) { return evaluate(ports[i], 0); }, options.threads);
    for (std::size_t i = 0; i < ports.size(); ++i) fock_rows[ports[i]] = rows[i];
  }

  NoiseSurface surface;
  surface.family = family;
  surface.convention = convention;
  const std::size_t count = ports.size() * excess.size();
  surface.cells = parallel_map(
      count,
      [&](std::size_t idx) {
        const int n = ports[idx / excess.size()];
        const int e = excess[idx % excess.size()];
        if (family == InputFamily::kFock) {
          SurfaceCell cell = fock_rows.at(n);
          cell.excess = e;
          return cell;
        }
        return evaluate(n, e);
      },
      options.threads);
  return surface;
}

}  // namespace nport
