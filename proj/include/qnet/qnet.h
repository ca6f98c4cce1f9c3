// Copyright 2026 The qnet Authors.
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

/* C interface to the qnet simulation library. All objects are opaque
 * handles owned by the caller and released with the matching *_free.
 * Functions returning qnet_status leave a message retrievable through
 * qnet_last_error() (per thread) when they fail. */
#ifndef QNET_QNET_H_
#define QNET_QNET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QNET_API __declspec(dllexport)
#else
#define QNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qnet_status {
  QNET_OK = 0,
  QNET_ERR_INVALID_ARGUMENT = 1,
  QNET_ERR_DISCONNECTED = 2,
  QNET_ERR_NOT_POSITIVE_DEFINITE = 3,
  QNET_ERR_DECOUPLED = 4,
  QNET_ERR_NO_CANDIDATE = 5,
  QNET_ERR_NO_DETECTABLE_LOSS = 6,
  QNET_ERR_ESTIMATOR_DOMAIN = 7,
  QNET_ERR_DIMENSION_MISMATCH = 8,
  QNET_ERR_INVALID_STATE = 9,
  QNET_ERR_IO = 10,
  QNET_ERR_INTERNAL = 99
} qnet_status;

typedef struct qnet_topology qnet_topology;
typedef struct qnet_modes qnet_modes;
typedef struct qnet_experiment qnet_experiment;

typedef struct qnet_transfer_result {
  double fidelity_at_t_ideal;
  double fidelity_max;
  double t_of_max;
} qnet_transfer_result;

QNET_API const char* qnet_version(void);
QNET_API const char* qnet_last_error(void);

/* --- topology ----------------------------------------------------------- */

QNET_API qnet_status qnet_topology_sbm(int communities, int community_size,
                                       double p_int, double p_bet,
                                       uint64_t seed, qnet_topology** out);
QNET_API qnet_status qnet_topology_chain(int n, int closed,
                                         qnet_topology** out);
QNET_API qnet_status qnet_topology_read_edge_list(const char* path,
                                                  qnet_topology** out);
QNET_API void qnet_topology_free(qnet_topology* t);

QNET_API int qnet_topology_node_count(const qnet_topology* t);
QNET_API int qnet_topology_edge_count(const qnet_topology* t);
QNET_API int qnet_topology_community_count(const qnet_topology* t);
QNET_API int qnet_topology_community_of(const qnet_topology* t, int node);
QNET_API int qnet_topology_is_connected(const qnet_topology* t);
QNET_API qnet_status qnet_topology_edge(const qnet_topology* t, int index,
                                        int* u, int* v);
/* Row-major n*n Laplacian into `out` (capacity `len`). */
QNET_API qnet_status qnet_topology_laplacian(const qnet_topology* t, int* out,
                                             size_t len);
/* add != 0 adds the link, otherwise removes it. */
QNET_API qnet_status qnet_topology_edit_link(const qnet_topology* t, int u,
                                             int v, int add,
                                             qnet_topology** out);
QNET_API qnet_status qnet_topology_write_edge_list(const qnet_topology* t,
                                                   const char* path);

/* --- normal modes ------------------------------------------------------- */

/* `frequencies` may be NULL for a homogeneous network with omega0 = 1. */
QNET_API qnet_status qnet_modes_compute(const qnet_topology* t,
                                        const double* frequencies,
                                        double coupling, qnet_modes** out);
QNET_API void qnet_modes_free(qnet_modes* m);
QNET_API int qnet_modes_count(const qnet_modes* m);
QNET_API qnet_status qnet_modes_frequencies(const qnet_modes* m, double* out,
                                            size_t len);
QNET_API double qnet_modes_vector_entry(const qnet_modes* m, int node,
                                        int mode);

/* --- transfer ----------------------------------------------------------- */

QNET_API qnet_status qnet_transfer_constants(double omega, int c,
                                             double* coupling, double* time);

/* Plans on `planning` (homogeneous, omega0 = 1) and simulates on `actual`
 * with per-node `actual_frequencies` (NULL = all 1). Sends a squeezed
 * vacuum with squeezing r. window_samples == 1 evaluates at t_ideal only. */
QNET_API qnet_status qnet_transfer_squeezed(
    const qnet_topology* planning, const qnet_topology* actual,
    const double* actual_frequencies, double coupling, int mode, int sender,
    int receiver, int c, double r, int window_samples,
    qnet_transfer_result* out);

QNET_API qnet_status qnet_transfer_entanglement(
    const qnet_topology* planning, const qnet_topology* actual,
    const double* actual_frequencies, double coupling, int mode, int sender,
    int receiver, int c, double r, double* fraction);

/* --- experiments -------------------------------------------------------- */

/* Creates a config with the scenario's defaults. Scenario ids: fig2, fig3,
 * fig4, fig5, fig5c, fig6, fig7, appA. */
QNET_API qnet_status qnet_experiment_create(const char* scenario,
                                            qnet_experiment** out);
QNET_API void qnet_experiment_free(qnet_experiment* e);

/* Integer keys: seed, ensemble, communities, community_size, c,
 * window_samples, pairs_per_cell, detuned_community, exclude_defective.
 * Double keys: p_int, p_bet, omega0, coupling, squeezing, window_periods.
 * List keys: detunings, grid_p_bets (double); grid_communities,
 * grid_community_sizes (integer-valued doubles). */
QNET_API qnet_status qnet_experiment_set_int(qnet_experiment* e,
                                             const char* key, int64_t value);
QNET_API qnet_status qnet_experiment_set_double(qnet_experiment* e,
                                                const char* key, double value);
QNET_API qnet_status qnet_experiment_set_list(qnet_experiment* e,
                                              const char* key,
                                              const double* values,
                                              size_t count);

QNET_API qnet_status qnet_experiment_validate(const qnet_experiment* e);
QNET_API qnet_status qnet_experiment_run(qnet_experiment* e, int threads);
QNET_API size_t qnet_experiment_row_count(const qnet_experiment* e);
QNET_API int qnet_experiment_failed_count(const qnet_experiment* e);
/* format: "csv" or "json". Requires a completed run. */
QNET_API qnet_status qnet_experiment_write(const qnet_experiment* e,
                                           const char* format,
                                           const char* path);

#ifdef __cplusplus
}
#endif

#endif  /* QNET_QNET_H_ */
