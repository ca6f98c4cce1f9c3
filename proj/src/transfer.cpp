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

#include "qnet/transfer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qnet/error.hpp"

namespace qnet {

TransferConstants transfer_constants(double omega, int c) {
  require(omega > 0.0, ErrorCode::kInvalidArgument,
          "external frequency must be positive");
  require(c >= 1, ErrorCode::kInvalidArgument, "c must be a positive integer");
  const double span = 2.0 * c + 1.0;
  return {std::numbers::sqrt2 * omega * omega / span,
          span * std::numbers::pi / omega};
}

TransferPlan plan_transfer(const NormalModeBasis& basis, int mode,
                           int sender_node, int receiver_node, int c,
                           double decoupling_threshold) {
  const int n = basis.size();
  require(mode >= 0 && mode < n, ErrorCode::kInvalidArgument,
          "mode index out of range");
  require(sender_node >= 0 && sender_node < n && receiver_node >= 0 &&
              receiver_node < n,
          ErrorCode::kInvalidArgument, "sender/receiver node out of range");
  const double ks = basis.coupling(sender_node, mode);
  const double kr = basis.coupling(receiver_node, mode);
  require(std::abs(ks) > decoupling_threshold, ErrorCode::kDecoupled,
          "sender node is decoupled from the mode");
  require(std::abs(kr) > decoupling_threshold, ErrorCode::kDecoupled,
          "receiver node is decoupled from the mode");

  TransferPlan plan;
  plan.sender_node = sender_node;
  plan.receiver_node = receiver_node;
  plan.mode = mode;
  plan.c = c;
  plan.omega_ext = basis.frequencies(mode);
  const TransferConstants tc = transfer_constants(plan.omega_ext, c);
  plan.g_eff = tc.coupling;
  plan.t_ideal = tc.time;
  plan.k_sender = plan.g_eff / ks;
  plan.k_receiver = plan.g_eff / kr;
  return plan;
}

Eigen::MatrixXd assemble_full_potential(const HamiltonianSpec& spec,
                                        const TransferPlan& plan,
                                        bool include_auxiliary) {
  const int n = spec.topology.node_count();
  require(plan.sender_node >= 0 && plan.sender_node < n &&
              plan.receiver_node >= 0 && plan.receiver_node < n,
          ErrorCode::kInvalidArgument, "plan nodes outside the network");
  require(plan.omega_ext > 0.0, ErrorCode::kInvalidArgument,
          "external frequency must be positive");
  const ExtendedLayout layout{n};
  const int dim = n + (include_auxiliary ? 3 : 2);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, dim);
  v.topLeftCorner(n, n) = build_potential(spec);
  const double w2 = plan.omega_ext * plan.omega_ext;
  v(layout.sender(), layout.sender()) = w2;
  v(layout.receiver(), layout.receiver()) = w2;
  v(layout.sender(), plan.sender_node) = -plan.k_sender;
  v(plan.sender_node, layout.sender()) = -plan.k_sender;
  v(layout.receiver(), plan.receiver_node) = -plan.k_receiver;
  v(plan.receiver_node, layout.receiver()) = -plan.k_receiver;
  if (include_auxiliary) v(layout.auxiliary(), layout.auxiliary()) = w2;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      v, Eigen::EigenvaluesOnly);
  require(solver.eigenvalues()(0) > 0.0, ErrorCode::kNotPositiveDefinite,
          "extended potential is not positive definite; coupling too strong");
  return v;
}

ModalEvolution::ModalEvolution(const Eigen::MatrixXd& potential,
                               const CovarianceMatrix& initial) {
  const int n = static_cast<int>(potential.rows());
  require(initial.modes() == n, ErrorCode::kDimensionMismatch,
          "initial state and potential differ in dimension");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(potential);
  require(solver.eigenvalues()(0) > 0.0, ErrorCode::kNotPositiveDefinite,
          "potential is not positive definite");
  vectors_ = solver.eigenvectors();
  frequencies_ = solver.eigenvalues().array().sqrt();

  Eigen::MatrixXd to_modal = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  to_modal.topLeftCorner(n, n) = vectors_.transpose();
  to_modal.bottomRightCorner(n, n) = vectors_.transpose();
  modal_covariance_ = to_modal * initial.matrix() * to_modal.transpose();
}

CovarianceMatrix ModalEvolution::reduced_at(
    double t, std::span<const int> oscillators) const {
  const int n = static_cast<int>(frequencies_.size());
  const int k = static_cast<int>(oscillators.size());
  const Eigen::ArrayXd c = (frequencies_ * t).cos();
  const Eigen::ArrayXd s = (frequencies_ * t).sin();

  Eigen::MatrixXd rows(2 * k, 2 * n);
  for (int a = 0; a < k; ++a) {
    const int i = oscillators[a];
    require(i >= 0 && i < n, ErrorCode::kInvalidArgument,
            "oscillator index out of range");
    const Eigen::ArrayXd w = vectors_.row(i).transpose().array();
    rows.row(a).head(n) = (w * c).matrix().transpose();
    rows.row(a).tail(n) = (w * s / frequencies_).matrix().transpose();
    rows.row(k + a).head(n) = (-w * frequencies_ * s).matrix().transpose();
    rows.row(k + a).tail(n) = (w * c).matrix().transpose();
  }
  Eigen::MatrixXd out = rows * modal_covariance_ * rows.transpose();
  return CovarianceMatrix(0.5 * (out + out.transpose()));
}

namespace {

CovarianceMatrix initial_network_state(const HamiltonianSpec& spec,
                                       const CovarianceMatrix& sender_state,
                                       double omega_ext, bool with_auxiliary) {
  const int n = spec.topology.node_count();
  const int dim = n + 2 + (with_auxiliary ? 1 : 0);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
  for (int i = 0; i < n; ++i) {
    const double w = spec.frequencies(i);
    s(i, i) = 0.5 / w;
    s(dim + i, dim + i) = 0.5 * w;
  }
  const ExtendedLayout layout{n};
  s(layout.receiver(), layout.receiver()) = 0.5 / omega_ext;
  s(dim + layout.receiver(), dim + layout.receiver()) = 0.5 * omega_ext;

  // Sender (and auxiliary, if present) carry the supplied state.
  std::vector<int> slots{layout.sender()};
  if (with_auxiliary) slots.push_back(layout.auxiliary());
  const int m = sender_state.modes();
  require(m == static_cast<int>(slots.size()), ErrorCode::kDimensionMismatch,
          "sent state has the wrong number of modes");
  for (int a = 0; a < 2 * m; ++a) {
    for (int b = 0; b < 2 * m; ++b) {
      const int ia = (a < m ? slots[a] : dim + slots[a - m]);
      const int ib = (b < m ? slots[b] : dim + slots[b - m]);
      s(ia, ib) = sender_state.matrix()(a, b);
    }
  }
  return CovarianceMatrix(std::move(s));
}

}  // namespace

TransferResult simulate_transfer(const HamiltonianSpec& spec,
                                 const TransferPlan& plan,
                                 const CovarianceMatrix& sent,
                                 const TransferWindow& window) {
  require(sent.modes() == 1, ErrorCode::kDimensionMismatch,
          "sent state must be single-mode");
  require(window.samples >= 1, ErrorCode::kInvalidArgument,
          "window needs at least one sample");
  const Eigen::MatrixXd v = assemble_full_potential(spec, plan, false);
  const ModalEvolution evolution(
      v, initial_network_state(spec, sent, plan.omega_ext, false));

  const double width = window.width > 0.0
                           ? window.width
                           : 2.0 * std::numbers::pi / plan.omega_ext;
  const int receiver = ExtendedLayout{spec.topology.node_count()}.receiver();
  const int receiver_index[] = {receiver};

  TransferResult result;
  result.time_series.reserve(window.samples);
  for (int i = 0; i < window.samples; ++i) {
    const double t =
        window.samples == 1
            ? plan.t_ideal
            : plan.t_ideal + width * i / static_cast<double>(window.samples - 1);
    const double f =
        fidelity_single_mode(evolution.reduced_at(t, receiver_index), sent);
    result.time_series.emplace_back(t, f);
    if (i == 0) {
      result.fidelity_at_t_ideal = f;
      result.fidelity_max = f;
      result.t_of_max = t;
    } else if (f > result.fidelity_max) {
      result.fidelity_max = f;
      result.t_of_max = t;
    }
  }
  return result;
}

double entanglement_transfer(const HamiltonianSpec& spec,
                             const TransferPlan& plan, double r) {
  require(r > 0.0, ErrorCode::kInvalidArgument,
          "entanglement transfer needs r > 0");
  const CovarianceMatrix sent = two_mode_squeezed_vacuum(plan.omega_ext, r);
  const Eigen::MatrixXd v = assemble_full_potential(spec, plan, true);
  const ModalEvolution evolution(
      v, initial_network_state(spec, sent, plan.omega_ext, true));
  const ExtendedLayout layout{spec.topology.node_count()};
  const int pair[] = {layout.receiver(), layout.auxiliary()};
  const double received =
      log_negativity(evolution.reduced_at(plan.t_ideal, pair));
  return received / log_negativity(sent);
}

double squeezing_fraction(const CovarianceMatrix& received, double r_sent,
                          double omega) {
  require(received.modes() == 1, ErrorCode::kDimensionMismatch,
          "squeezing_fraction needs a single-mode state");
  require(r_sent > 0.0 && omega > 0.0, ErrorCode::kInvalidArgument,
          "need r_sent > 0 and omega > 0");
  Eigen::Matrix2d scale = Eigen::Matrix2d::Zero();
  scale(0, 0) = std::sqrt(omega);
  scale(1, 1) = 1.0 / std::sqrt(omega);
  const Eigen::Matrix2d normalized = scale * received.matrix() * scale;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(normalized);
  const double r_received =
      std::max(0.0, -0.5 * std::log(2.0 * solver.eigenvalues()(0)));
  return r_received / r_sent;
}

CommunityFidelityStats community_fidelity_stats(
    std::span<const PairFidelity> samples) {
  require(!samples.empty(), ErrorCode::kInvalidArgument,
          "no fidelity samples");
  struct Acc {
    double sum = 0.0;
    int count = 0;
    double mean() const { return sum / count; }
  };
  std::map<CommunityPair, Acc> cells;
  Acc total;
  for (const PairFidelity& s : samples) {
    Acc& cell = cells[CommunityPair(s.sender_community, s.receiver_community)];
    cell.sum += s.fidelity;
    ++cell.count;
    total.sum += s.fidelity;
    ++total.count;
  }

  std::vector<int> communities;
  for (const auto& [pair, acc] : cells) {
    communities.push_back(pair.first);
    communities.push_back(pair.second);
  }
  std::sort(communities.begin(), communities.end());
  communities.erase(std::unique(communities.begin(), communities.end()),
                    communities.end());

  CommunityFidelityStats stats;
  stats.mean = total.mean();
  bool have_best = false;
  for (const auto& [pair, acc] : cells) {
    if (pair.first != pair.second) continue;
    if (!have_best || acc.mean() > stats.best) stats.best = acc.mean();
    have_best = true;
  }
  bool have_top2 = false;
  for (std::size_t a = 0; a < communities.size(); ++a) {
    for (std::size_t b = a + 1; b < communities.size(); ++b) {
      Acc sub;
      for (const auto& [pair, acc] : cells) {
        const bool inside =
            (pair.first == communities[a] || pair.first == communities[b]) &&
            (pair.second == communities[a] || pair.second == communities[b]);
        if (!inside) continue;
        sub.sum += acc.sum;
        sub.count += acc.count;
      }
      if (!have_top2 || sub.mean() > stats.top2) stats.top2 = sub.mean();
      have_top2 = true;
    }
  }
  if (!have_best) stats.best = stats.mean;
  if (!have_top2) stats.top2 = stats.best;
  return stats;
}

}  // namespace qnet
