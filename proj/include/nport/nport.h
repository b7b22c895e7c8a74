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

/* C interface to nportsim.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every call returns an nport_status; on failure a
 * description is available from nport_last_error() on the same thread.
 * Strings returned through char** are heap-allocated and released with
 * nport_string_free. */

#ifndef NPORT_NPORT_H_
#define NPORT_NPORT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NPORT_BUILDING_LIBRARY)
#    define NPORT_API __declspec(dllexport)
#  else
#    define NPORT_API __declspec(dllimport)
#  endif
#else
#  define NPORT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nport_status {
  NPORT_OK = 0,
  NPORT_ERR_INVALID_ARGUMENT = 1,
  NPORT_ERR_DIMENSION = 2,
  NPORT_ERR_CAPACITY = 3,
  NPORT_ERR_NORMALIZATION = 4,
  NPORT_ERR_ALIASING = 5,
  NPORT_ERR_NO_SIGNAL = 6,
  NPORT_ERR_INTERNAL = 99
} nport_status;

typedef enum nport_convention {
  NPORT_CONVENTION_DETECTOR = 0,
  NPORT_CONVENTION_REDUCED = 1
} nport_convention;

typedef enum nport_family {
  NPORT_FAMILY_FOCK = 0,
  NPORT_FAMILY_EXCESS = 1,
  NPORT_FAMILY_COHERENT = 2,
  NPORT_FAMILY_SHOT = 3
} nport_family;

typedef enum nport_point_status {
  NPORT_POINT_REGULAR = 0,
  NPORT_POINT_INFINITE = 1,
  NPORT_POINT_LIMIT = 2
} nport_point_status;

typedef struct nport_state nport_state;
typedef struct nport_unitary nport_unitary;
typedef struct nport_experiment nport_experiment;

typedef struct nport_moments {
  double mean;
  double second_moment;
  double variance;
} nport_moments;

typedef struct nport_noise_point {
  double phi;
  double mean;
  double second_moment;
  double variance;
  double slope;
  double delta_phi; /* +inf when status is NPORT_POINT_INFINITE */
  int status;       /* nport_point_status */
} nport_noise_point;

typedef struct nport_surface_cell {
  int ports;
  int excess;
  int available;
  double delta_phi;
  double log10_delta_phi;
} nport_surface_cell;

typedef struct nport_sample_report {
  uint64_t trials;
  double coincidence_rate;
  double presence_rate;
  double standard_error;
  double presence_standard_error;
  uint64_t seed;
} nport_sample_report;

NPORT_API const char* nport_version(void);
NPORT_API const char* nport_status_name(nport_status status);
/* Message of the last failed call on this thread, "" if none. */
NPORT_API const char* nport_last_error(void);
NPORT_API void nport_string_free(char* text);

/* ---- states ---- */

/* counts holds n_terms rows of modes occupation numbers; re/im the
 * amplitudes. A cap <= 0 selects the default photon cap. */
NPORT_API nport_status nport_state_create(size_t modes, size_t n_terms, const int* counts,
                                          const double* re, const double* im, int photon_cap,
                                          nport_state** out);
NPORT_API nport_status nport_state_vacuum(size_t modes, int photon_cap, nport_state** out);
NPORT_API void nport_state_free(nport_state* state);

NPORT_API nport_status nport_state_modes(const nport_state* state, size_t* out);
NPORT_API nport_status nport_state_term_count(const nport_state* state, size_t* out);
NPORT_API nport_status nport_state_norm(const nport_state* state, double* out);
NPORT_API nport_status nport_state_amplitude(const nport_state* state, const int* counts,
                                             double* re, double* im);
NPORT_API nport_status nport_state_apply_creation(const nport_state* state, size_t mode,
                                                  nport_state** out);
NPORT_API nport_status nport_state_apply_annihilation(const nport_state* state, size_t mode,
                                                      nport_state** out);
NPORT_API nport_status nport_state_inner_product(const nport_state* bra, const nport_state* ket,
                                                 double* re, double* im);
/* {"modes": M, "probabilities": [{"counts": [...], "p": ...}, ...]} */
NPORT_API nport_status nport_state_distribution_json(const nport_state* state, char** out);

/* ---- networks ---- */

/* entries: dim*dim row-major complex values as interleaved (re, im). */
NPORT_API nport_status nport_unitary_create(size_t dim, const double* entries,
                                            nport_unitary** out);
NPORT_API nport_status nport_unitary_splitter(double phase, nport_unitary** out);
NPORT_API nport_status nport_unitary_dft(int ports, nport_unitary** out);
NPORT_API nport_status nport_unitary_full_network(int ports, double phase,
                                                  int include_front_splitter,
                                                  nport_unitary** out);
NPORT_API nport_status nport_unitary_embed(const nport_unitary* unitary, const size_t* targets,
                                           size_t n_targets, size_t total, nport_unitary** out);
/* then * first */
NPORT_API nport_status nport_unitary_compose(const nport_unitary* first,
                                             const nport_unitary* then, nport_unitary** out);
NPORT_API nport_status nport_unitary_adjoint(const nport_unitary* unitary, nport_unitary** out);
NPORT_API void nport_unitary_free(nport_unitary* unitary);

NPORT_API nport_status nport_unitary_dim(const nport_unitary* unitary, size_t* out);
NPORT_API nport_status nport_unitary_entry(const nport_unitary* unitary, size_t row, size_t col,
                                           double* re, double* im);
NPORT_API nport_status nport_unitary_residual(const nport_unitary* unitary, double* out);
NPORT_API nport_status nport_evolve(const nport_state* state, const nport_unitary* unitary,
                                    nport_state** out);

/* ---- observables and detectors ---- */

NPORT_API nport_status nport_moments_detector(const nport_state* output_state,
                                              nport_moments* out);
NPORT_API nport_status nport_moments_reduced(const nport_state* arm_state, int ports,
                                             nport_moments* out);
NPORT_API nport_status nport_first_moment_crosscheck(const nport_state* arm_state, int ports,
                                                     double* out);
NPORT_API nport_status nport_presence_expectation(const nport_state* output_state, double* out);
/* tau_re/tau_im: one transmission amplitude per output channel. */
NPORT_API nport_status nport_lossy_signal_ancilla(const nport_state* output_state,
                                                  const double* tau_re, const double* tau_im,
                                                  size_t channels, double* out);
NPORT_API nport_status nport_sample_state(const nport_state* output_state, uint64_t trials,
                                          uint64_t seed, unsigned threads,
                                          nport_sample_report* out);

/* ---- reference formulas ---- */

NPORT_API nport_status nport_excess_prefactor(int ports, int excess, double* out);
/* Exact reduced fraction; fails with NPORT_ERR_CAPACITY past the exact range. */
NPORT_API nport_status nport_excess_prefactor_exact(int ports, int excess, uint64_t* numerator,
                                                    uint64_t* denominator);
NPORT_API nport_status nport_noise_closed_forms(int ports, int excess, double* noon,
                                                double* fock, double* shot);
NPORT_API nport_status nport_stirling_scaling(int ports, double* out);

/* ---- experiments ---- */

/* Flat JSON description, e.g. {"ports": 2, "input": "fock:2",
 * "convention": "reduced"}. Relative input files resolve against base_dir
 * (NULL for the working directory). */
NPORT_API nport_status nport_experiment_from_json(const char* json, const char* base_dir,
                                                  nport_experiment** out);
NPORT_API void nport_experiment_free(nport_experiment* experiment);
NPORT_API nport_status nport_experiment_to_json(const nport_experiment* experiment, char** out);
NPORT_API nport_status nport_experiment_phase_points(const nport_experiment* experiment,
                                                     int* out);
NPORT_API nport_status nport_experiment_moments(const nport_experiment* experiment, double phi,
                                                nport_moments* out);

/* points == 0 uses the experiment's grid size. *out has *count entries and
 * is released with nport_points_free. */
NPORT_API nport_status nport_scan(const nport_experiment* experiment, int points,
                                  nport_noise_point** out, size_t* count);
NPORT_API void nport_points_free(nport_noise_point* points);
NPORT_API nport_status nport_min_phase_spread(const nport_experiment* experiment, int points,
                                              double* phi_star, double* delta_phi_min,
                                              int* at_singularity);
NPORT_API nport_status nport_experiment_sample(const nport_experiment* experiment, double phi,
                                               uint64_t trials, uint64_t seed, unsigned threads,
                                               nport_sample_report* out);

/* Cells are row-major over (ports, excess). photon_cap <= 0 selects the
 * default. Released with nport_cells_free. */
NPORT_API nport_status nport_noise_surface(const int* ports, size_t n_ports, const int* excess,
                                           size_t n_excess, nport_family family,
                                           nport_convention convention, int photon_cap,
                                           unsigned threads, nport_surface_cell** out,
                                           size_t* count);
NPORT_API void nport_cells_free(nport_surface_cell* cells);

/* ---- self-verification ---- */

/* JSON report in *out; *all_pass is 1 when every check passed. */
NPORT_API nport_status nport_verify(const char* suite, char** out, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* NPORT_NPORT_H_ */
