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

#include <span>
#include <vector>

namespace qnet {

// Zero-mean Gaussian state. Quadrature ordering is (q_1..q_m, p_1..p_m),
// hbar = 1, so the vacuum of a unit-frequency oscillator is I/2.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd sigma);

  int modes() const { return static_cast<int>(sigma_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const { return sigma_; }

  // Symmetric and all symplectic eigenvalues >= 1/2 - tol.
  bool is_physical(double tol = 1e-9) const;

 private:
  Eigen::MatrixXd sigma_;
};

struct SymplecticPropagator {
  Eigen::MatrixXd matrix;
  double time = 0.0;
};

enum class StateKind { kVacuum, kSqueezed, kTwoModeSqueezed };

struct StateParams {
  double omega = 1.0;
  double squeezing = 0.0;
  double phase = 0.0;
};

// Canonical form [[0, I], [-I, 0]] for the ordering above.
Eigen::MatrixXd symplectic_form(int modes);

CovarianceMatrix make_state(StateKind kind, const StateParams& params);

inline CovarianceMatrix vacuum(double omega = 1.0) {
  return make_state(StateKind::kVacuum, {omega, 0.0, 0.0});
}
inline CovarianceMatrix squeezed_vacuum(double omega, double r,
                                        double phase = 0.0) {
  return make_state(StateKind::kSqueezed, {omega, r, phase});
}
inline CovarianceMatrix two_mode_squeezed_vacuum(double omega, double r) {
  return make_state(StateKind::kTwoModeSqueezed, {omega, r, 0.0});
}

// Thermal state with mean occupation nbar, for tests and oracles.
CovarianceMatrix thermal(double omega, double nbar);

CovarianceMatrix direct_sum(const CovarianceMatrix& a,
                            const CovarianceMatrix& b);

// S = [[cos Wt, W^-1 sin Wt], [-W sin Wt, cos Wt]] with W = sqrt(V).
SymplecticPropagator symplectic_propagator(const Eigen::MatrixXd& potential,
                                           double t);

CovarianceMatrix evolve(const CovarianceMatrix& sigma,
                        const SymplecticPropagator& s);

// Principal submatrix on the given modes, in the given order.
CovarianceMatrix reduce(const CovarianceMatrix& sigma,
                        std::span<const int> modes);

// Ascending, one value per mode.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma);

// Squared-overlap (Uhlmann) fidelity between zero-mean single-mode states.
double fidelity_single_mode(const CovarianceMatrix& a,
                            const CovarianceMatrix& b);

// Base-2 logarithmic negativity of a two-mode state.
double log_negativity(const CovarianceMatrix& sigma);

}  // namespace qnet
