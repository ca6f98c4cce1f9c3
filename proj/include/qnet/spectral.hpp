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

#pragma once

#include <Eigen/Core>

#include <vector>

#include "qnet/topology.hpp"

namespace qnet {

// Network Hamiltonian H = p^T p / 2 + q^T (diag(w^2) + g L) q / 2.
struct HamiltonianSpec {
  Eigen::VectorXd frequencies;
  double coupling = 1.0;
  Topology topology;

  static HamiltonianSpec homogeneous(Topology topology, double omega0 = 1.0,
                                     double coupling = 1.0);
  void validate() const;
};

// Columns of `vectors` are eigenvectors, each with its largest-magnitude
// entry positive; `frequencies` ascend.
struct NormalModeBasis {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd frequencies;

  int size() const { return static_cast<int>(frequencies.size()); }
  double coupling(int node, int mode) const { return vectors(node, mode); }
};

Eigen::MatrixXd build_potential(const HamiltonianSpec& spec);

// Throws kNotPositiveDefinite for an unstable potential.
NormalModeBasis normal_modes(const Eigen::MatrixXd& potential);

inline NormalModeBasis normal_modes(const HamiltonianSpec& spec) {
  return normal_modes(build_potential(spec));
}

// (after - before) / before for modes [first, last], matched by sorted index.
std::vector<double> mode_frequency_shifts(const NormalModeBasis& before,
                                          const NormalModeBasis& after,
                                          int first, int last);

// Median |K_{i,mode}| over the members of each community.
std::vector<double> community_mode_coupling(const NormalModeBasis& basis,
                                            const Topology& t, int mode);

// Relative shifts below this are treated as no change.
inline constexpr double kShiftFloor = 1e-10;

// Picks the most shifted of modes 1..N-1 and returns the two communities
// coupling most strongly to it in the pre-loss basis.
CommunityPair detect_lost_link_pair(const NormalModeBasis& before,
                                    const Eigen::VectorXd& omega_after,
                                    const Topology& t);

// Community whose median mode-0 coupling deviates most from 1/sqrt(n).
// Ties go to the lowest id.
int detect_detuned_community(const std::vector<double>& couplings,
                             int node_count);

// First-order estimate of a single detuned oscillator's frequency from the
// shifted center-of-mass frequency.
double estimate_detuning(double omega0_after, int node_count, double omega0);

}  // namespace qnet
