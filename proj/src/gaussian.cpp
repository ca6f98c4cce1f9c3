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

#include "qnet/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "qnet/error.hpp"

namespace qnet {
namespace {

// Symmetric square root of a positive semidefinite matrix.
Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() *
         solver.eigenvectors().transpose();
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

// Covariance of one mode with normalized quadratures (sqrt(w) q, p/sqrt(w))
// mapped back to (q, p).
Eigen::Matrix2d unnormalize(const Eigen::Matrix2d& normalized, double omega) {
  Eigen::Matrix2d scale = Eigen::Matrix2d::Zero();
  scale(0, 0) = 1.0 / std::sqrt(omega);
  scale(1, 1) = std::sqrt(omega);
  return scale * normalized * scale;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd sigma)
    : sigma_(std::move(sigma)) {
  require(sigma_.rows() == sigma_.cols() && sigma_.rows() > 0 &&
              sigma_.rows() % 2 == 0,
          ErrorCode::kDimensionMismatch,
          "covariance matrix must be square with even dimension");
  require((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() <=
              1e-12 * std::max(1.0, sigma_.cwiseAbs().maxCoeff()),
          ErrorCode::kInvalidState, "covariance matrix must be symmetric");
  sigma_ = symmetrized(sigma_);
}

bool CovarianceMatrix::is_physical(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma_,
                                                        Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) <= 0.0) return false;
  const std::vector<double> nu = symplectic_eigenvalues(*this);
  return nu.front() >= 0.5 - tol;
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  j.topRightCorner(modes, modes).setIdentity();
  j.bottomLeftCorner(modes, modes) = -Eigen::MatrixXd::Identity(modes, modes);
  return j;
}

CovarianceMatrix make_state(StateKind kind, const StateParams& params) {
  require(params.omega > 0.0, ErrorCode::kInvalidArgument,
          "state frequency must be positive");
  const double r = params.squeezing;
  switch (kind) {
    case StateKind::kVacuum:
      return CovarianceMatrix(
          unnormalize(0.5 * Eigen::Matrix2d::Identity(), params.omega));
    case StateKind::kSqueezed: {
      // Phase 0 squeezes position; the squeezing axis rotates by phase/2.
      const double a = 0.5 * params.phase;
      Eigen::Matrix2d rot;
      rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
      const Eigen::Matrix2d diag =
          Eigen::Vector2d(0.5 * std::exp(-2.0 * r), 0.5 * std::exp(2.0 * r))
              .asDiagonal();
      return CovarianceMatrix(
          unnormalize(rot * diag * rot.transpose(), params.omega));
    }
    case StateKind::kTwoModeSqueezed: {
      const double ch = 0.5 * std::cosh(2.0 * r);
      const double sh = 0.5 * std::sinh(2.0 * r);
      const double w = params.omega;
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 4);
      s(0, 0) = s(1, 1) = ch / w;
      s(0, 1) = s(1, 0) = sh / w;
      s(2, 2) = s(3, 3) = ch * w;
      s(2, 3) = s(3, 2) = -sh * w;
      return CovarianceMatrix(std::move(s));
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown state kind");
}

CovarianceMatrix thermal(double omega, double nbar) {
  require(omega > 0.0 && nbar >= 0.0, ErrorCode::kInvalidArgument,
          "thermal state needs omega > 0 and nbar >= 0");
  return CovarianceMatrix(unnormalize(
      (nbar + 0.5) * Eigen::Matrix2d::Identity(), omega));
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a,
                            const CovarianceMatrix& b) {
  const int ma = a.modes();
  const int mb = b.modes();
  const int m = ma + mb;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  // Block (x, y) with x, y in {q, p}.
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      s.block(x * m, y * m, ma, ma) = a.matrix().block(x * ma, y * ma, ma, ma);
      s.block(x * m + ma, y * m + ma, mb, mb) =
          b.matrix().block(x * mb, y * mb, mb, mb);
    }
  }
  return CovarianceMatrix(std::move(s));
}

SymplecticPropagator symplectic_propagator(const Eigen::MatrixXd& potential,
                                           double t) {
  require(potential.rows() == potential.cols() && potential.rows() > 0,
          ErrorCode::kDimensionMismatch, "potential must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(potential);
  require(solver.eigenvalues()(0) > 0.0, ErrorCode::kNotPositiveDefinite,
          "potential is not positive definite");
  const int n = static_cast<int>(potential.rows());
  const Eigen::MatrixXd& k = solver.eigenvectors();
  const Eigen::ArrayXd w = solver.eigenvalues().array().sqrt();
  const Eigen::ArrayXd c = (w * t).cos();
  const Eigen::ArrayXd s = (w * t).sin();

  SymplecticPropagator prop{Eigen::MatrixXd(2 * n, 2 * n), t};
  const Eigen::MatrixXd kt = k.transpose();
  prop.matrix.topLeftCorner(n, n) = k * c.matrix().asDiagonal() * kt;
  prop.matrix.topRightCorner(n, n) = k * (s / w).matrix().asDiagonal() * kt;
  prop.matrix.bottomLeftCorner(n, n) = k * (-w * s).matrix().asDiagonal() * kt;
  prop.matrix.bottomRightCorner(n, n) = prop.matrix.topLeftCorner(n, n);
  return prop;
}

CovarianceMatrix evolve(const CovarianceMatrix& sigma,
                        const SymplecticPropagator& s) {
  require(s.matrix.rows() == sigma.matrix().rows(),
          ErrorCode::kDimensionMismatch,
          "propagator and covariance differ in dimension");
  return CovarianceMatrix(
      symmetrized(s.matrix * sigma.matrix() * s.matrix.transpose()));
}

CovarianceMatrix reduce(const CovarianceMatrix& sigma,
                        std::span<const int> modes) {
  const int m = sigma.modes();
  const int k = static_cast<int>(modes.size());
  require(k >= 1, ErrorCode::kInvalidArgument, "empty mode subset");
  std::vector<int> rows;
  rows.reserve(2 * k);
  for (int i : modes) {
    require(i >= 0 && i < m, ErrorCode::kInvalidArgument,
            "mode index out of range");
    rows.push_back(i);
  }
  for (int i : modes) rows.push_back(i + m);
  Eigen::MatrixXd out(2 * k, 2 * k);
  for (int a = 0; a < 2 * k; ++a) {
    for (int b = 0; b < 2 * k; ++b) out(a, b) = sigma.matrix()(rows[a], rows[b]);
  }
  return CovarianceMatrix(std::move(out));
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma) {
  // nu^2 are the eigenvalues of sigma J^T sigma J, which is similar to the
  // symmetric A J^T sigma J A with A = sqrt(sigma); each appears twice.
  const int m = sigma.modes();
  const Eigen::MatrixXd j = symplectic_form(m);
  const Eigen::MatrixXd a = sqrt_psd(sigma.matrix());
  const Eigen::MatrixXd b =
      symmetrized(a * j.transpose() * sigma.matrix() * j * a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b,
                                                        Eigen::EigenvaluesOnly);
  std::vector<double> nu;
  nu.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double lo = std::max(solver.eigenvalues()(2 * i), 0.0);
    const double hi = std::max(solver.eigenvalues()(2 * i + 1), 0.0);
    nu.push_back(std::sqrt(0.5 * (lo + hi)));
  }
  return nu;
}

double fidelity_single_mode(const CovarianceMatrix& a,
                            const CovarianceMatrix& b) {
  require(a.modes() == 1 && b.modes() == 1, ErrorCode::kDimensionMismatch,
          "fidelity_single_mode needs single-mode states");
  const double det_a = a.matrix().determinant();
  const double det_b = b.matrix().determinant();
  require(det_a >= 0.25 - 1e-9 && det_b >= 0.25 - 1e-9 &&
              a.matrix()(0, 0) > 0.0 && b.matrix()(0, 0) > 0.0,
          ErrorCode::kInvalidState, "covariance violates the uncertainty relation");
  const double delta = (a.matrix() + b.matrix()).determinant();
  const double lambda =
      std::max(0.0, 4.0 * (det_a - 0.25) * (det_b - 0.25));
  const double f = 1.0 / (std::sqrt(delta + lambda) - std::sqrt(lambda));
  return std::clamp(f, 0.0, 1.0);
}

double log_negativity(const CovarianceMatrix& sigma) {
  require(sigma.modes() == 2, ErrorCode::kDimensionMismatch,
          "log_negativity needs a two-mode state");
  require(sigma.is_physical(), ErrorCode::kInvalidState,
          "covariance violates the uncertainty relation");
  // Partial transpose flips the second mode's momentum (index 3).
  Eigen::MatrixXd pt = sigma.matrix();
  pt.row(3) *= -1.0;
  pt.col(3) *= -1.0;
  const double nu_min = symplectic_eigenvalues(CovarianceMatrix(pt)).front();
  return std::max(0.0, -std::log2(2.0 * nu_min));
}

}  // namespace qnet
