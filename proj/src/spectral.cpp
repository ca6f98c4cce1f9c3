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

#include "qnet/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "qnet/error.hpp"

namespace qnet {
namespace {

double median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  if (values.size() % 2 == 1) return values[mid];
  const double upper = values[mid];
  const double lower =
      *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

HamiltonianSpec HamiltonianSpec::homogeneous(Topology topology, double omega0,
                                             double coupling) {
  const int n = topology.node_count();
  return HamiltonianSpec{Eigen::VectorXd::Constant(n, omega0), coupling,
                         std::move(topology)};
}

void HamiltonianSpec::validate() const {
  require(frequencies.size() == topology.node_count(),
          ErrorCode::kDimensionMismatch,
          "one frequency per network node required");
  require((frequencies.array() > 0.0).all(), ErrorCode::kInvalidArgument,
          "oscillator frequencies must be positive");
  require(coupling > 0.0, ErrorCode::kInvalidArgument,
          "coupling must be positive");
}

Eigen::MatrixXd build_potential(const HamiltonianSpec& spec) {
  spec.validate();
  Eigen::MatrixXd v = spec.coupling * laplacian(spec.topology).cast<double>();
  v.diagonal() += spec.frequencies.array().square().matrix();
  return v;
}

NormalModeBasis normal_modes(const Eigen::MatrixXd& potential) {
  require(potential.rows() == potential.cols() && potential.rows() > 0,
          ErrorCode::kDimensionMismatch, "potential must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(potential);
  require(solver.info() == Eigen::Success, ErrorCode::kInvalidState,
          "eigendecomposition failed");
  const Eigen::VectorXd& eig = solver.eigenvalues();
  require(eig(0) > 0.0, ErrorCode::kNotPositiveDefinite,
          "potential has non-positive eigenvalue " + std::to_string(eig(0)));

  NormalModeBasis basis{solver.eigenvectors(), eig.cwiseSqrt()};
  for (int k = 0; k < basis.vectors.cols(); ++k) {
    Eigen::Index arg = 0;
    basis.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (basis.vectors(arg, k) < 0.0) basis.vectors.col(k) *= -1.0;
  }
  return basis;
}

std::vector<double> mode_frequency_shifts(const NormalModeBasis& before,
                                          const NormalModeBasis& after,
                                          int first, int last) {
  require(before.size() == after.size(), ErrorCode::kDimensionMismatch,
          "mode bases differ in dimension");
  require(first >= 0 && first <= last && last < before.size(),
          ErrorCode::kInvalidArgument, "mode range out of bounds");
  std::vector<double> shifts;
  shifts.reserve(last - first + 1);
  for (int k = first; k <= last; ++k) {
    shifts.push_back((after.frequencies(k) - before.frequencies(k)) /
                     before.frequencies(k));
  }
  return shifts;
}

std::vector<double> community_mode_coupling(const NormalModeBasis& basis,
                                            const Topology& t, int mode) {
  require(mode >= 0 && mode < basis.size(), ErrorCode::kInvalidArgument,
          "mode index out of range");
  require(basis.size() == t.node_count(), ErrorCode::kDimensionMismatch,
          "basis and topology differ in size");
  std::vector<std::vector<double>> groups(t.community_count());
  for (int i = 0; i < t.node_count(); ++i) {
    groups[t.community_of(i)].push_back(std::abs(basis.vectors(i, mode)));
  }
  std::vector<double> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.push_back(median(std::move(g)));
  return out;
}

CommunityPair detect_lost_link_pair(const NormalModeBasis& before,
                                    const Eigen::VectorXd& omega_after,
                                    const Topology& t) {
  const int n_comm = t.community_count();
  require(n_comm >= 2, ErrorCode::kInvalidArgument,
          "detection needs at least two communities");
  require(omega_after.size() >= n_comm && before.size() >= n_comm,
          ErrorCode::kDimensionMismatch,
          "need frequencies for modes 1..N-1");

  int best_mode = -1;
  double best_shift = kShiftFloor;
  for (int k = 1; k < n_comm; ++k) {
    const double shift = std::abs(
        (omega_after(k) - before.frequencies(k)) / before.frequencies(k));
    if (shift > best_shift) {
      best_shift = shift;
      best_mode = k;
    }
  }
  require(best_mode > 0, ErrorCode::kNoDetectableLoss,
          "no mode shifted above the numerical floor");

  const std::vector<double> c = community_mode_coupling(before, t, best_mode);
  std::vector<int> order(n_comm);
  for (int i = 0; i < n_comm; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return c[a] > c[b]; });
  return CommunityPair(order[0], order[1]);
}

int detect_detuned_community(const std::vector<double>& couplings,
                             int node_count) {
  require(couplings.size() >= 2, ErrorCode::kInvalidArgument,
          "detection needs at least two communities");
  require(node_count >= 1, ErrorCode::kInvalidArgument,
          "node count must be positive");
  const double reference = 1.0 / std::sqrt(static_cast<double>(node_count));
  int best = 0;
  double best_dev = -1.0;
  for (std::size_t c = 0; c < couplings.size(); ++c) {
    const double dev = std::abs(couplings[c] - reference);
    if (dev > best_dev) {
      best_dev = dev;
      best = static_cast<int>(c);
    }
  }
  return best;
}

double estimate_detuning(double omega0_after, int node_count, double omega0) {
  require(omega0_after > 0.0, ErrorCode::kInvalidArgument,
          "shifted frequency must be positive");
  require(node_count >= 1 && omega0 > 0.0, ErrorCode::kInvalidArgument,
          "invalid reference network");
  const double w2 = omega0 * omega0;
  const double radicand =
      w2 + node_count * (omega0_after * omega0_after - w2);
  require(radicand > 0.0, ErrorCode::kEstimatorDomain,
          "detuning too large for the first-order estimator");
  return std::sqrt(radicand);
}

}  // namespace qnet
