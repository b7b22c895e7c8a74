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

#include "nport/nport.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nport/detectors.hpp"
#include "nport/error.hpp"
#include "nport/experiment.hpp"
#include "nport/fock.hpp"
#include "nport/networks.hpp"
#include "nport/observables.hpp"
#include "nport/phase_estimation.hpp"
#include "nport/reference.hpp"
#include "nport/verify.hpp"

struct nport_state {
  nport::PureState value;
};
struct nport_unitary {
  nport::ModeUnitary value;
};
struct nport_experiment {
  nport::Experiment value;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
nport_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return NPORT_OK;
  } catch (const nport::Error& e) {
    last_error = e.what();
    return static_cast<nport_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NPORT_ERR_CAPACITY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NPORT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return NPORT_ERR_INTERNAL;
  }
}

template <typename T>
void require(const T* pointer, const char* what) {
  if (pointer == nullptr) {
    nport::fail(nport::ErrorCode::kInvalidArgument, std::string(what) + " is null");
  }
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <typename T>
T* copy_array(const std::vector<T>& values) {
  T* out = static_cast<T*>(std::malloc(sizeof(T) * (values.empty() ? 1 : values.size())));
  if (out == nullptr) throw std::bad_alloc();
  std::copy(values.begin(), values.end(), out);
  return out;
}

int cap_or_default(int cap) { return cap > 0 ? cap : nport::kDefaultPhotonCap; }

nport::MomentConvention convention_of(nport_convention c) {
  switch (c) {
    case NPORT_CONVENTION_DETECTOR:
      return nport::MomentConvention::kDetectorStatistics;
    case NPORT_CONVENTION_REDUCED:
      return nport::MomentConvention::kReducedOperator;
  }
  nport::fail(nport::ErrorCode::kInvalidArgument, "unknown moment convention");
}

nport::InputFamily family_of(nport_family f) {
  switch (f) {
    case NPORT_FAMILY_FOCK:
      return nport::InputFamily::kFock;
    case NPORT_FAMILY_EXCESS:
      return nport::InputFamily::kExcessFock;
    case NPORT_FAMILY_COHERENT:
      return nport::InputFamily::kCoherent;
    case NPORT_FAMILY_SHOT:
      return nport::InputFamily::kShotNoise;
  }
  nport::fail(nport::ErrorCode::kInvalidArgument, "unknown input family");
}

void store(const nport::MomentResult& m, nport_moments* out) {
  out->mean = m.mean;
  out->second_moment = m.second_moment;
  out->variance = m.variance;
}

void store(const nport::SampleReport& r, nport_sample_report* out) {
  out->trials = r.trials;
  out->coincidence_rate = r.coincidence_rate;
  out->presence_rate = r.presence_rate;
  out->standard_error = r.standard_error;
  out->presence_standard_error = r.presence_standard_error;
  out->seed = r.seed;
}

nport::PhaseGrid grid_for(const nport::Experiment& e, int points) {
  return nport::PhaseGrid(points > 0 ? points : e.phase_points());
}

}  // namespace

extern "C" {

const char* nport_version(void) { return NPORT_VERSION_STRING; }

const char* nport_status_name(nport_status status) {
  switch (status) {
    case NPORT_OK:
      return "ok";
    case NPORT_ERR_INTERNAL:
      return "internal";
    default:
      break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 6) {
    return nport::error_code_name(static_cast<nport::ErrorCode>(code)).data();
  }
  return "unknown";
}

const char* nport_last_error(void) { return last_error.c_str(); }

void nport_string_free(char* text) { std::free(text); }

nport_status nport_state_create(size_t modes, size_t n_terms, const int* counts,
                                const double* re, const double* im, int photon_cap,
                                nport_state** out) {
  return guarded([&] {
    require(out, "out");
    if (n_terms > 0) {
      require(counts, "counts");
      require(re, "re");
      require(im, "im");
    }
    nport::PureState::Terms terms;
    for (size_t t = 0; t < n_terms; ++t) {
      const nport::OccupationVector key(std::span<const int>(counts + t * modes, modes));
      terms[key] += nport::Amplitude(re[t], im[t]);
    }
    *out = new nport_state{nport::PureState(modes, std::move(terms), cap_or_default(photon_cap))};
  });
}

nport_status nport_state_vacuum(size_t modes, int photon_cap, nport_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = new nport_state{nport::PureState::vacuum(modes, cap_or_default(photon_cap))};
  });
}

void nport_state_free(nport_state* state) { delete state; }

nport_status nport_state_modes(const nport_state* state, size_t* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->value.modes();
  });
}

nport_status nport_state_term_count(const nport_state* state, size_t* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->value.size();
  });
}

nport_status nport_state_norm(const nport_state* state, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->value.norm();
  });
}

nport_status nport_state_amplitude(const nport_state* state, const int* counts, double* re,
                                   double* im) {
  return guarded([&] {
    require(state, "state");
    require(counts, "counts");
    require(re, "re");
    require(im, "im");
    const auto a = state->value.amplitude(
        nport::OccupationVector(std::span<const int>(counts, state->value.modes())));
    *re = a.real();
    *im = a.imag();
  });
}

nport_status nport_state_apply_creation(const nport_state* state, size_t mode,
                                        nport_state** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = new nport_state{nport::apply_creation(state->value, mode)};
  });
}

nport_status nport_state_apply_annihilation(const nport_state* state, size_t mode,
                                            nport_state** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = new nport_state{nport::apply_annihilation(state->value, mode)};
  });
}

nport_status nport_state_inner_product(const nport_state* bra, const nport_state* ket,
                                       double* re, double* im) {
  return guarded([&] {
    require(bra, "bra");
    require(ket, "ket");
    require(re, "re");
    require(im, "im");
    const auto z = nport::inner_product(bra->value, ket->value);
    *re = z.real();
    *im = z.imag();
  });
}

nport_status nport_state_distribution_json(const nport_state* state, char** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    nlohmann::ordered_json doc;
    doc["modes"] = state->value.modes();
    doc["probabilities"] = nlohmann::ordered_json::array();
    for (const auto& [occ, p] : nport::number_distribution(state->value)) {
      doc["probabilities"].push_back({{"counts", occ.to_vector()}, {"p", p}});
    }
    *out = copy_string(doc.dump());
  });
}

nport_status nport_unitary_create(size_t dim, const double* entries, nport_unitary** out) {
  return guarded([&] {
    require(entries, "entries");
    require(out, "out");
    const auto n = static_cast<Eigen::Index>(dim);
    nport::ModeUnitary::Matrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        const size_t at = 2 * static_cast<size_t>(j * n + k);
        m(j, k) = {entries[at], entries[at + 1]};
      }
    }
    *out = new nport_unitary{nport::ModeUnitary(std::move(m))};
  });
}

nport_status nport_unitary_splitter(double phase, nport_unitary** out) {
  return guarded([&] {
    require(out, "out");
    *out = new nport_unitary{nport::balanced_splitter_with_phase(phase)};
  });
}

nport_status nport_unitary_dft(int ports, nport_unitary** out) {
  return guarded([&] {
    require(out, "out");
    *out = new nport_unitary{nport::dft_nport(ports)};
  });
}

nport_status nport_unitary_full_network(int ports, double phase, int include_front_splitter,
                                        nport_unitary** out) {
  return guarded([&] {
    require(out, "out");
    *out = new nport_unitary{
        nport::build_full_network({ports, phase, include_front_splitter != 0})};
  });
}

nport_status nport_unitary_embed(const nport_unitary* unitary, const size_t* targets,
                                 size_t n_targets, size_t total, nport_unitary** out) {
  return guarded([&] {
    require(unitary, "unitary");
    require(targets, "targets");
    require(out, "out");
    *out = new nport_unitary{
        nport::embed(unitary->value, std::span<const size_t>(targets, n_targets), total)};
  });
}

nport_status nport_unitary_compose(const nport_unitary* first, const nport_unitary* then,
                                   nport_unitary** out) {
  return guarded([&] {
    require(first, "first");
    require(then, "then");
    require(out, "out");
    *out = new nport_unitary{nport::compose(first->value, then->value)};
  });
}

nport_status nport_unitary_adjoint(const nport_unitary* unitary, nport_unitary** out) {
  return guarded([&] {
    require(unitary, "unitary");
    require(out, "out");
    *out = new nport_unitary{unitary->value.adjoint()};
  });
}

void nport_unitary_free(nport_unitary* unitary) { delete unitary; }

nport_status nport_unitary_dim(const nport_unitary* unitary, size_t* out) {
  return guarded([&] {
    require(unitary, "unitary");
    require(out, "out");
    *out = unitary->value.dim();
  });
}

nport_status nport_unitary_entry(const nport_unitary* unitary, size_t row, size_t col,
                                 double* re, double* im) {
  return guarded([&] {
    require(unitary, "unitary");
    require(re, "re");
    require(im, "im");
    if (row >= unitary->value.dim() || col >= unitary->value.dim()) {
      nport::fail(nport::ErrorCode::kDimension, "entry index out of range");
    }
    const auto z = unitary->value.matrix()(static_cast<Eigen::Index>(row),
                                           static_cast<Eigen::Index>(col));
    *re = z.real();
    *im = z.imag();
  });
}

nport_status nport_unitary_residual(const nport_unitary* unitary, double* out) {
  return guarded([&] {
    require(unitary, "unitary");
    require(out, "out");
    *out = unitary->value.unitarity_residual();
  });
}

nport_status nport_evolve(const nport_state* state, const nport_unitary* unitary,
                          nport_state** out) {
  return guarded([&] {
    require(state, "state");
    require(unitary, "unitary");
    require(out, "out");
    *out = new nport_state{nport::evolve(state->value, unitary->value)};
  });
}

nport_status nport_moments_detector(const nport_state* output_state, nport_moments* out) {
  return guarded([&] {
    require(output_state, "state");
    require(out, "out");
    store(nport::coincidence_moments_detector(output_state->value), out);
  });
}

nport_status nport_moments_reduced(const nport_state* arm_state, int ports,
                                   nport_moments* out) {
  return guarded([&] {
    require(arm_state, "state");
    require(out, "out");
    store(nport::coincidence_moments_reduced(arm_state->value, ports), out);
  });
}

nport_status nport_first_moment_crosscheck(const nport_state* arm_state, int ports,
                                           double* out) {
  return guarded([&] {
    require(arm_state, "state");
    require(out, "out");
    *out = nport::first_moment_crosscheck(arm_state->value, ports);
  });
}

nport_status nport_presence_expectation(const nport_state* output_state, double* out) {
  return guarded([&] {
    require(output_state, "state");
    require(out, "out");
    *out = nport::presence_expectation(output_state->value);
  });
}

nport_status nport_lossy_signal_ancilla(const nport_state* output_state, const double* tau_re,
                                        const double* tau_im, size_t channels, double* out) {
  return guarded([&] {
    require(output_state, "state");
    require(tau_re, "tau_re");
    require(tau_im, "tau_im");
    require(out, "out");
    std::vector<nport::Amplitude> tau;
    for (size_t j = 0; j < channels; ++j) tau.emplace_back(tau_re[j], tau_im[j]);
    *out = nport::lossy_signal_ancilla(output_state->value, nport::LossSpec(std::move(tau)));
  });
}

nport_status nport_sample_state(const nport_state* output_state, uint64_t trials, uint64_t seed,
                                unsigned threads, nport_sample_report* out) {
  return guarded([&] {
    require(output_state, "state");
    require(out, "out");
    store(nport::sample_clicks(output_state->value, trials, seed, std::nullopt, threads), out);
  });
}

nport_status nport_excess_prefactor(int ports, int excess, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = nport::excess_pattern(ports, excess).prefactor;
  });
}

nport_status nport_excess_prefactor_exact(int ports, int excess, uint64_t* numerator,
                                          uint64_t* denominator) {
  return guarded([&] {
    require(numerator, "numerator");
    require(denominator, "denominator");
    const auto exact = nport::excess_prefactor_rational(ports, excess);
    constexpr auto kMax = static_cast<unsigned __int128>(UINT64_MAX);
    if (!exact || exact->numerator > kMax || exact->denominator > kMax) {
      nport::fail(nport::ErrorCode::kCapacity, "prefactor outside the exact 64-bit range");
    }
    *numerator = static_cast<uint64_t>(exact->numerator);
    *denominator = static_cast<uint64_t>(exact->denominator);
  });
}

nport_status nport_noise_closed_forms(int ports, int excess, double* noon, double* fock,
                                      double* shot) {
  return guarded([&] {
    require(noon, "noon");
    require(fock, "fock");
    require(shot, "shot");
    const auto forms = nport::noise_closed_forms(ports, excess);
    *noon = forms.noon;
    *fock = forms.fock;
    *shot = forms.shot;
  });
}

nport_status nport_stirling_scaling(int ports, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = nport::stirling_scaling(ports);
  });
}

nport_status nport_experiment_from_json(const char* json, const char* base_dir,
                                        nport_experiment** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    const std::filesystem::path base = base_dir ? base_dir : "";
    *out = new nport_experiment{nport::Experiment(nport::parse_experiment_json(json, base))};
  });
}

void nport_experiment_free(nport_experiment* experiment) { delete experiment; }

nport_status nport_experiment_to_json(const nport_experiment* experiment, char** out) {
  return guarded([&] {
    require(experiment, "experiment");
    require(out, "out");
    *out = copy_string(nport::experiment_to_json(experiment->value.spec()));
  });
}

nport_status nport_experiment_phase_points(const nport_experiment* experiment, int* out) {
  return guarded([&] {
    require(experiment, "experiment");
    require(out, "out");
    *out = experiment->value.phase_points();
  });
}

nport_status nport_experiment_moments(const nport_experiment* experiment, double phi,
                                      nport_moments* out) {
  return guarded([&] {
    require(experiment, "experiment");
    require(out, "out");
    store(experiment->value.moments(phi), out);
  });
}

nport_status nport_scan(const nport_experiment* experiment, int points, nport_noise_point** out,
                        size_t* count) {
  return guarded([&] {
    require(experiment, "experiment");
    require(out, "out");
    require(count, "count");
    std::vector<nport_noise_point> rows;
    for (const auto& p : nport::scan(experiment->value, grid_for(experiment->value, points))) {
      rows.push_back({p.phi, p.mean, p.second_moment, p.variance, p.slope, p.delta_phi,
                      static_cast<int>(p.status)});
    }
    *out = copy_array(rows);
    *count = rows.size();
  });
}

void nport_points_free(nport_noise_point* points) { std::free(points); }

nport_status nport_min_phase_spread(const nport_experiment* experiment, int points,
                                    double* phi_star, double* delta_phi_min,
                                    int* at_singularity) {
  return guarded([&] {
    require(experiment, "experiment");
    require(phi_star, "phi_star");
    require(delta_phi_min, "delta_phi_min");
    const auto m =
        nport::min_phase_spread(experiment->value, grid_for(experiment->value, points));
    *phi_star = m.phi_star;
    *delta_phi_min = m.delta_phi_min;
    if (at_singularity) *at_singularity = m.at_singularity ? 1 : 0;
  });
}

nport_status nport_experiment_sample(const nport_experiment* experiment, double phi,
                                     uint64_t trials, uint64_t seed, unsigned threads,
                                     nport_sample_report* out) {
  return guarded([&] {
    require(experiment, "experiment");
    require(out, "out");
    // output_distribution already applies the configured loss.
    store(nport::sample_clicks(experiment->value.output_distribution(phi), trials, seed,
                               std::nullopt, threads),
          out);
  });
}

nport_status nport_noise_surface(const int* ports, size_t n_ports, const int* excess,
                                 size_t n_excess, nport_family family,
                                 nport_convention convention, int photon_cap, unsigned threads,
                                 nport_surface_cell** out, size_t* count) {
  return guarded([&] {
    require(ports, "ports");
    require(excess, "excess");
    require(out, "out");
    require(count, "count");
    nport::SurfaceOptions options;
    options.photon_cap = cap_or_default(photon_cap);
    options.threads = threads == 0 ? 1 : threads;
    const auto surface = nport::noise_surface(
        std::vector<int>(ports, ports + n_ports), std::vector<int>(excess, excess + n_excess),
        family_of(family), convention_of(convention), options);
    std::vector<nport_surface_cell> cells;
    for (const auto& c : surface.cells) {
      cells.push_back({c.ports, c.excess, c.available ? 1 : 0, c.delta_phi, c.log10_delta_phi});
    }
    *out = copy_array(cells);
    *count = cells.size();
  });
}

void nport_cells_free(nport_surface_cell* cells) { std::free(cells); }

nport_status nport_verify(const char* suite, char** out, int* all_pass) {
  return guarded([&] {
    require(suite, "suite");
    require(out, "out");
    const auto report = nport::run_verification(suite);
    *out = copy_string(report.to_json());
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
  });
}

}  // extern "C"
