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
#include <utility>
#include <vector>

#include "qnet/gaussian.hpp"
#include "qnet/spectral.hpp"

namespace qnet {

// Resonant coupling and transfer time for external oscillators at `omega`:
// g = sqrt(2) omega^2 / (2c + 1), t = (2c + 1) pi / omega.
struct TransferConstants {
  double coupling = 0.0;
  double time = 0.0;
};
TransferConstants transfer_constants(double omega, int c);

struct TransferPlan {
  int sender_node = 0;
  int receiver_node = 0;
  int mode = 0;
  int c = 50;
  double omega_ext = 1.0;
  double g_eff = 0.0;
  double k_sender = 0.0;
  double k_receiver = 0.0;
  double t_ideal = 0.0;
};

inline constexpr double kDecouplingThreshold = 1e-6;

// Tunes k so that the effective coupling k * K_{node,mode} equals g_eff.
TransferPlan plan_transfer(const NormalModeBasis& basis, int mode,
                           int sender_node, int receiver_node, int c,
                           double decoupling_threshold = kDecouplingThreshold);

// Index layout of the extended system: network nodes 0..n-1, then sender,
// receiver and (optionally) the auxiliary oscillator.
struct ExtendedLayout {
  int network = 0;
  int sender() const { return network; }
  int receiver() const { return network + 1; }
  int auxiliary() const { return network + 2; }
};

Eigen::MatrixXd assemble_full_potential(const HamiltonianSpec& spec,
                                        const TransferPlan& plan,
                                        bool include_auxiliary);

// Exact evolution of an extended system, carried out in its normal-mode
// basis so that reduced states at many times cost O(N^2) each.
class ModalEvolution {
 public:
  ModalEvolution(const Eigen::MatrixXd& potential,
                 const CovarianceMatrix& initial);

  CovarianceMatrix reduced_at(double t, std::span<const int> oscillators) const;

 private:
  Eigen::MatrixXd vectors_;
  Eigen::ArrayXd frequencies_;
  Eigen::MatrixXd modal_covariance_;
};

struct TransferWindow {
  double width = 0.0;  // <= 0 selects one period of the resonant mode
  int samples = 200;   // 1 evaluates at t_ideal only
};

struct TransferResult {
  double fidelity_at_t_ideal = 0.0;
  double fidelity_max = 0.0;
  double t_of_max = 0.0;
  std::vector<std::pair<double, double>> time_series;
};

// Sender starts in `sent`, network oscillators in their own vacua, receiver
// in the vacuum at omega_ext. Fidelity is against `sent`.
TransferResult simulate_transfer(const HamiltonianSpec& spec,
                                 const TransferPlan& plan,
                                 const CovarianceMatrix& sent,
                                 const TransferWindow& window = {});

// E_N(receiver, auxiliary at t_ideal) / E_N(tmsv(r)), with the two-mode
// squeezed vacuum shared between sender and a decoupled auxiliary.
double entanglement_transfer(const HamiltonianSpec& spec,
                             const TransferPlan& plan, double r);

// Phase-insensitive ratio of received to sent squeezing.
double squeezing_fraction(const CovarianceMatrix& received, double r_sent,
                          double omega);

struct PairFidelity {
  int sender_community = 0;
  int receiver_community = 0;
  double fidelity = 0.0;
};

struct CommunityFidelityStats {
  double best = 0.0;
  double top2 = 0.0;
  double mean = 0.0;
};

// best: highest within-community mean; top2: highest mean over pairs inside
// any two-community sub-network; mean: grand mean.
CommunityFidelityStats community_fidelity_stats(
    std::span<const PairFidelity> samples);

}  // namespace qnet
