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

// One interferometer configuration: port count, input state, readout.
//
// Single-arm inputs (fock, excess, coherent, superposition, mixed) enter mode
// alpha with beta empty and pass through the front splitter. NOON states are
// given directly in the two arms a1, a2 after the phase shift,
// (|n,0> + e^{i n phi}|0,n>)/sqrt2, and see only the N-port.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nport/detectors.hpp"
#include "nport/fock.hpp"
#include "nport/observables.hpp"
#include "nport/reference.hpp"

namespace nport {

struct FockInput {
  int photons = 0;
};
/// Fock state with ports + excess photons.
struct ExcessInput {
  int excess = 0;
};
struct CoherentInput {
  double mean = 0.0;
};
struct NoonInput {
  int photons = 0;
};
/// sum_J c_J (alpha^dag)^J / sqrt(J!) |0>
struct SuperpositionInput {
  std::vector<std::pair<int, Amplitude>> amplitudes;
};
/// sum_i w_i |J_i><J_i| in mode alpha.
struct MixedInput {
  std::vector<std::pair<double, int>> components;
};

using InputSpec = std::variant<FockInput, ExcessInput, CoherentInput, NoonInput,
                               SuperpositionInput, MixedInput>;

enum class DetectorKind { kNumberResolving, kThreshold };

std::string_view to_string(DetectorKind kind);
std::optional<DetectorKind> parse_detector(std::string_view text);

struct ExperimentSpec {
  int ports = 2;
  InputSpec input = FockInput{2};
  /// Grid size for scans; unset means the default for this input.
  std::optional<int> phase_points;
  /// Required: the library never picks a moment convention on its own.
  std::optional<MomentConvention> convention;
  std::optional<LossSpec> loss;
  DetectorKind detector = DetectorKind::kNumberResolving;
  std::optional<std::uint64_t> seed;
  int photon_cap = kDefaultPhotonCap;
};

/// Parses the compact input forms "fock:n", "excess:E", "coherent:mean",
/// "noon:n", "superposition:<path>" and "mixed:<path>". File paths are read
/// relative to `base_dir`.
InputSpec parse_input(std::string_view text, const std::filesystem::path& base_dir = {});

/// Flat JSON mirroring ExperimentSpec, e.g.
///   {"ports": 3, "input": "fock:3", "convention": "reduced",
///    "phase_points": 49, "loss": [0.9, 0.9, 1.0], "detector": "number"}
/// Superposition and mixed inputs may be given inline as "superposition":
/// [{"J":2,"re":0.5,"im":0}] or "mixed": [{"weight":0.5,"fock":2}].
ExperimentSpec parse_experiment_json(std::string_view json_text,
                                     const std::filesystem::path& base_dir = {});
std::string experiment_to_json(const ExperimentSpec& spec);

/// Validated, ready-to-evaluate experiment. Immutable; evaluation methods are
/// safe to call concurrently.
class Experiment {
 public:
  explicit Experiment(ExperimentSpec spec);

  const ExperimentSpec& spec() const noexcept { return spec_; }
  int ports() const noexcept { return spec_.ports; }
  MomentConvention convention() const noexcept { return *spec_.convention; }
  /// Photon cap in force, raised to the coherent truncation point if needed.
  int photon_cap() const noexcept { return cap_; }
  /// Largest photon number present in the input.
  int max_photons() const noexcept { return max_photons_; }
  /// Grid size used when ExperimentSpec leaves it unset: the smallest odd size
  /// >= max(2 * cap + 1, 2 * max_photons + 1).
  int default_phase_points() const noexcept;
  int phase_points() const noexcept;

  /// Two-arm state(s) after the splitter and phase shift.
  MixedEnsemble arm_states(double phi) const;
  /// N-port output state(s).
  MixedEnsemble output_states(double phi) const;
  /// Output number distribution behind the configured detectors' loss.
  NumberDistribution output_distribution(double phi) const;

  /// Moments of the configured observable at phi: I_N under the configured
  /// convention for number-resolving detectors, P_N for threshold detectors.
  MomentResult moments(double phi) const;
  MomentResult moments(double phi, MomentConvention convention) const;

  /// Single-arm photon-number weights (empty for NOON input).
  const PhotonWeights& photon_weights() const noexcept { return weights_; }

 private:
  ExperimentSpec spec_;
  int cap_ = kDefaultPhotonCap;
  int max_photons_ = 0;
  PhotonWeights weights_;
  // Pure single-arm input on (alpha, beta, vacuum...) when the input is pure.
  std::optional<PureState> pure_input_;
  // Mixed single-arm input components.
  std::vector<std::pair<double, PureState>> mixed_inputs_;
};

}  // namespace nport
