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

#include "qnet/qnet.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>

#include "qnet/error.hpp"
#include "qnet/experiments.hpp"
#include "qnet/gaussian.hpp"
#include "qnet/rng.hpp"
#include "qnet/spectral.hpp"
#include "qnet/topology.hpp"
#include "qnet/transfer.hpp"

struct qnet_topology {
  qnet::Topology value;
};

struct qnet_modes {
  qnet::NormalModeBasis value;
};

struct qnet_experiment {
  qnet::ExperimentConfig config;
  std::optional<qnet::ResultTable> results;
};

namespace {

thread_local std::string last_error;

qnet_status to_status(qnet::ErrorCode code) {
  switch (code) {
    case qnet::ErrorCode::kInvalidArgument: return QNET_ERR_INVALID_ARGUMENT;
    case qnet::ErrorCode::kDisconnected: return QNET_ERR_DISCONNECTED;
    case qnet::ErrorCode::kNotPositiveDefinite:
      return QNET_ERR_NOT_POSITIVE_DEFINITE;
    case qnet::ErrorCode::kDecoupled: return QNET_ERR_DECOUPLED;
    case qnet::ErrorCode::kNoCandidate: return QNET_ERR_NO_CANDIDATE;
    case qnet::ErrorCode::kNoDetectableLoss: return QNET_ERR_NO_DETECTABLE_LOSS;
    case qnet::ErrorCode::kEstimatorDomain: return QNET_ERR_ESTIMATOR_DOMAIN;
    case qnet::ErrorCode::kDimensionMismatch:
      return QNET_ERR_DIMENSION_MISMATCH;
    case qnet::ErrorCode::kInvalidState: return QNET_ERR_INVALID_STATE;
    case qnet::ErrorCode::kIo: return QNET_ERR_IO;
  }
  return QNET_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
qnet_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return QNET_OK;
  } catch (const qnet::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return QNET_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QNET_ERR_INTERNAL;
  }
}

void require_handle(const void* p, const char* what) {
  qnet::require(p != nullptr, qnet::ErrorCode::kInvalidArgument,
                std::string("null ") + what);
}

qnet::HamiltonianSpec make_spec(const qnet::Topology& t,
                                const double* frequencies, double coupling) {
  qnet::HamiltonianSpec spec = qnet::HamiltonianSpec::homogeneous(t, 1.0,
                                                                  coupling);
  if (frequencies != nullptr) {
    for (int i = 0; i < t.node_count(); ++i) {
      spec.frequencies(i) = frequencies[i];
    }
  }
  spec.validate();
  return spec;
}

}  // namespace

extern "C" {

const char* qnet_version(void) { return "1.0.0"; }

const char* qnet_last_error(void) { return last_error.c_str(); }

qnet_status qnet_topology_sbm(int communities, int community_size,
                              double p_int, double p_bet, uint64_t seed,
                              qnet_topology** out) {
  return guarded([&] {
    require_handle(out, "output pointer");
    qnet::Rng rng = qnet::derive_stream(seed, 0);
    *out = new qnet_topology{qnet::generate_sbm(
        {communities, community_size, p_int, p_bet}, rng)};
  });
}

qnet_status qnet_topology_chain(int n, int closed, qnet_topology** out) {
  return guarded([&] {
    require_handle(out, "output pointer");
    *out = new qnet_topology{qnet::generate_chain(n, closed != 0)};
  });
}

qnet_status qnet_topology_read_edge_list(const char* path,
                                         qnet_topology** out) {
  return guarded([&] {
    require_handle(path, "path");
    require_handle(out, "output pointer");
    std::ifstream in(path);
    qnet::require(static_cast<bool>(in), qnet::ErrorCode::kIo,
                  std::string("cannot open ") + path);
    *out = new qnet_topology{qnet::read_edge_list(in)};
  });
}

void qnet_topology_free(qnet_topology* t) { delete t; }

int qnet_topology_node_count(const qnet_topology* t) {
  return t ? t->value.node_count() : -1;
}

int qnet_topology_edge_count(const qnet_topology* t) {
  return t ? t->value.edge_count() : -1;
}

int qnet_topology_community_count(const qnet_topology* t) {
  return t ? t->value.community_count() : -1;
}

int qnet_topology_community_of(const qnet_topology* t, int node) {
  if (!t || node < 0 || node >= t->value.node_count()) return -1;
  return t->value.community_of(node);
}

int qnet_topology_is_connected(const qnet_topology* t) {
  return t ? (qnet::is_connected(t->value) ? 1 : 0) : -1;
}

qnet_status qnet_topology_edge(const qnet_topology* t, int index, int* u,
                               int* v) {
  return guarded([&] {
    require_handle(t, "topology");
    require_handle(u, "output pointer");
    require_handle(v, "output pointer");
    qnet::require(index >= 0 && index < t->value.edge_count(),
                  qnet::ErrorCode::kInvalidArgument, "edge index out of range");
    const qnet::Edge& e = t->value.edges()[index];
    *u = e.u;
    *v = e.v;
  });
}

qnet_status qnet_topology_laplacian(const qnet_topology* t, int* out,
                                    size_t len) {
  return guarded([&] {
    require_handle(t, "topology");
    require_handle(out, "output buffer");
    const int n = t->value.node_count();
    qnet::require(len >= static_cast<size_t>(n) * n,
                  qnet::ErrorCode::kDimensionMismatch,
                  "output buffer too small for the Laplacian");
    const Eigen::MatrixXi lap = qnet::laplacian(t->value);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out[i * n + j] = lap(i, j);
    }
  });
}

qnet_status qnet_topology_edit_link(const qnet_topology* t, int u, int v,
                                    int add, qnet_topology** out) {
  return guarded([&] {
    require_handle(t, "topology");
    require_handle(out, "output pointer");
    *out = new qnet_topology{qnet::edit_link(
        t->value, u, v,
        add ? qnet::LinkAction::kAdd : qnet::LinkAction::kRemove)};
  });
}

qnet_status qnet_topology_write_edge_list(const qnet_topology* t,
                                          const char* path) {
  return guarded([&] {
    require_handle(t, "topology");
    require_handle(path, "path");
    std::ofstream out(path, std::ios::binary);
    qnet::require(static_cast<bool>(out), qnet::ErrorCode::kIo,
                  std::string("cannot open ") + path);
    qnet::write_edge_list(t->value, out);
    qnet::require(static_cast<bool>(out), qnet::ErrorCode::kIo,
                  std::string("failed writing ") + path);
  });
}

qnet_status qnet_modes_compute(const qnet_topology* t,
                               const double* frequencies, double coupling,
                               qnet_modes** out) {
  return guarded([&] {
    require_handle(t, "topology");
    require_handle(out, "output pointer");
    *out = new qnet_modes{
        qnet::normal_modes(make_spec(t->value, frequencies, coupling))};
  });
}

void qnet_modes_free(qnet_modes* m) { delete m; }

int qnet_modes_count(const qnet_modes* m) { return m ? m->value.size() : -1; }

qnet_status qnet_modes_frequencies(const qnet_modes* m, double* out,
                                   size_t len) {
  return guarded([&] {
    require_handle(m, "modes");
    require_handle(out, "output buffer");
    const int n = m->value.size();
    qnet::require(len >= static_cast<size_t>(n),
                  qnet::ErrorCode::kDimensionMismatch,
                  "output buffer too small");
    for (int i = 0; i < n; ++i) out[i] = m->value.frequencies(i);
  });
}

double qnet_modes_vector_entry(const qnet_modes* m, int node, int mode) {
  if (!m || node < 0 || mode < 0 || node >= m->value.size() ||
      mode >= m->value.size()) {
    return std::nan("");
  }
  return m->value.coupling(node, mode);
}

qnet_status qnet_transfer_constants(double omega, int c, double* coupling,
                                    double* time) {
  return guarded([&] {
    const qnet::TransferConstants tc = qnet::transfer_constants(omega, c);
    if (coupling) *coupling = tc.coupling;
    if (time) *time = tc.time;
  });
}

qnet_status qnet_transfer_squeezed(const qnet_topology* planning,
                                   const qnet_topology* actual,
                                   const double* actual_frequencies,
                                   double coupling, int mode, int sender,
                                   int receiver, int c, double r,
                                   int window_samples,
                                   qnet_transfer_result* out) {
  return guarded([&] {
    require_handle(planning, "planning topology");
    require_handle(actual, "actual topology");
    require_handle(out, "output pointer");
    qnet::require(
        planning->value.node_count() == actual->value.node_count(),
        qnet::ErrorCode::kDimensionMismatch, "topologies differ in size");
    const qnet::NormalModeBasis basis =
        qnet::normal_modes(make_spec(planning->value, nullptr, coupling));
    const qnet::TransferPlan plan =
        qnet::plan_transfer(basis, mode, sender, receiver, c);
    const qnet::TransferResult result = qnet::simulate_transfer(
        make_spec(actual->value, actual_frequencies, coupling), plan,
        qnet::squeezed_vacuum(plan.omega_ext, r),
        qnet::TransferWindow{0.0, window_samples});
    *out = {result.fidelity_at_t_ideal, result.fidelity_max, result.t_of_max};
  });
}

qnet_status qnet_transfer_entanglement(const qnet_topology* planning,
                                       const qnet_topology* actual,
                                       const double* actual_frequencies,
                                       double coupling, int mode, int sender,
                                       int receiver, int c, double r,
                                       double* fraction) {
  return guarded([&] {
    require_handle(planning, "planning topology");
    require_handle(actual, "actual topology");
    require_handle(fraction, "output pointer");
    qnet::require(
        planning->value.node_count() == actual->value.node_count(),
        qnet::ErrorCode::kDimensionMismatch, "topologies differ in size");
    const qnet::NormalModeBasis basis =
        qnet::normal_modes(make_spec(planning->value, nullptr, coupling));
    const qnet::TransferPlan plan =
        qnet::plan_transfer(basis, mode, sender, receiver, c);
    *fraction = qnet::entanglement_transfer(
        make_spec(actual->value, actual_frequencies, coupling), plan, r);
  });
}

qnet_status qnet_experiment_create(const char* scenario,
                                   qnet_experiment** out) {
  return guarded([&] {
    require_handle(scenario, "scenario");
    require_handle(out, "output pointer");
    const auto id = qnet::parse_scenario(scenario);
    qnet::require(id.has_value(), qnet::ErrorCode::kInvalidArgument,
                  std::string("unknown scenario '") + scenario + "'");
    *out = new qnet_experiment{qnet::ExperimentConfig::defaults(*id), {}};
  });
}

void qnet_experiment_free(qnet_experiment* e) { delete e; }

qnet_status qnet_experiment_set_int(qnet_experiment* e, const char* key,
                                    int64_t value) {
  return guarded([&] {
    require_handle(e, "experiment");
    require_handle(key, "key");
    qnet::ExperimentConfig& c = e->config;
    const std::string k = key;
    const auto narrow = [&](int& field) {
      qnet::require(value >= INT32_MIN && value <= INT32_MAX,
                    qnet::ErrorCode::kInvalidArgument,
                    "value out of range for " + k);
      field = static_cast<int>(value);
    };
    if (k == "seed") {
      c.seed = static_cast<std::uint64_t>(value);
    } else if (k == "ensemble") {
      narrow(c.ensemble);
    } else if (k == "communities") {
      narrow(c.sbm.communities);
    } else if (k == "community_size") {
      narrow(c.sbm.community_size);
    } else if (k == "c") {
      narrow(c.c);
    } else if (k == "window_samples") {
      narrow(c.window_samples);
    } else if (k == "pairs_per_cell") {
      narrow(c.pairs_per_cell);
    } else if (k == "detuned_community") {
      narrow(c.detuned_community);
    } else if (k == "exclude_defective") {
      c.exclude_defective = value != 0;
    } else {
      qnet::fail(qnet::ErrorCode::kInvalidArgument,
                 "unknown integer key '" + k + "'");
    }
    e->results.reset();
  });
}

qnet_status qnet_experiment_set_double(qnet_experiment* e, const char* key,
                                       double value) {
  return guarded([&] {
    require_handle(e, "experiment");
    require_handle(key, "key");
    qnet::ExperimentConfig& c = e->config;
    const std::string k = key;
    if (k == "p_int") {
      c.sbm.p_int = value;
    } else if (k == "p_bet") {
      c.sbm.p_bet = value;
    } else if (k == "omega0") {
      c.omega0 = value;
    } else if (k == "coupling") {
      c.coupling = value;
    } else if (k == "squeezing") {
      c.squeezing = value;
    } else if (k == "window_periods") {
      c.window_periods = value;
    } else {
      qnet::fail(qnet::ErrorCode::kInvalidArgument,
                 "unknown double key '" + k + "'");
    }
    e->results.reset();
  });
}

qnet_status qnet_experiment_set_list(qnet_experiment* e, const char* key,
                                     const double* values, size_t count) {
  return guarded([&] {
    require_handle(e, "experiment");
    require_handle(key, "key");
    if (count > 0) require_handle(values, "values");
    qnet::ExperimentConfig& c = e->config;
    const std::string k = key;
    const std::vector<double> list(values, values + count);
    const auto as_ints = [&] {
      std::vector<int> out;
      for (double v : list) {
        qnet::require(v == std::floor(v) && std::abs(v) < 1e9,
                      qnet::ErrorCode::kInvalidArgument,
                      k + " expects integer values");
        out.push_back(static_cast<int>(v));
      }
      return out;
    };
    if (k == "detunings") {
      c.detunings = list;
    } else if (k == "grid_p_bets") {
      c.grid.p_bets = list;
    } else if (k == "grid_communities") {
      c.grid.communities = as_ints();
    } else if (k == "grid_community_sizes") {
      c.grid.community_sizes = as_ints();
    } else {
      qnet::fail(qnet::ErrorCode::kInvalidArgument,
                 "unknown list key '" + k + "'");
    }
    e->results.reset();
  });
}

qnet_status qnet_experiment_validate(const qnet_experiment* e) {
  return guarded([&] {
    require_handle(e, "experiment");
    e->config.validate();
  });
}

qnet_status qnet_experiment_run(qnet_experiment* e, int threads) {
  return guarded([&] {
    require_handle(e, "experiment");
    e->results = qnet::run_scenario(e->config, threads);
  });
}

size_t qnet_experiment_row_count(const qnet_experiment* e) {
  return (e && e->results) ? e->results->records.size() : 0;
}

int qnet_experiment_failed_count(const qnet_experiment* e) {
  return (e && e->results) ? e->results->failed_realizations : -1;
}

qnet_status qnet_experiment_write(const qnet_experiment* e, const char* format,
                                  const char* path) {
  return guarded([&] {
    require_handle(e, "experiment");
    require_handle(format, "format");
    require_handle(path, "path");
    qnet::require(e->results.has_value(), qnet::ErrorCode::kInvalidState,
                  "experiment has not been run");
    const std::string f = format;
    qnet::require(f == "csv" || f == "json", qnet::ErrorCode::kInvalidArgument,
                  "format must be csv or json");
    qnet::write_results(*e->results,
                        f == "csv" ? qnet::OutputFormat::kCsv
                                   : qnet::OutputFormat::kJson,
                        std::filesystem::path(path));
  });
}

}  // extern "C"
