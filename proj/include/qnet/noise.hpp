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

#include <optional>
#include <utility>
#include <variant>

#include "qnet/rng.hpp"
#include "qnet/spectral.hpp"
#include "qnet/topology.hpp"

namespace qnet {

struct LinkLoss {
  Edge edge;
  CommunityPair pair;
};

struct Detuning {
  int node = 0;
  double omega = 1.0;
};

// Ground truth of a single static noise event.
using NoiseEvent = std::variant<LinkLoss, Detuning>;

enum class LinkKind { kInternal, kInterCommunity };

// Removes one uniformly chosen link of the requested kind whose removal
// keeps the graph connected.
std::pair<Topology, LinkLoss> apply_link_loss(const Topology& t, Rng& rng,
                                              LinkKind kind);

// Removes a specific link; throws kDisconnected if that splits the graph.
std::pair<Topology, LinkLoss> apply_link_loss(const Topology& t, Edge edge);

std::pair<HamiltonianSpec, Detuning> apply_detuning(const HamiltonianSpec& spec,
                                                    int node,
                                                    double delta_omega);

// Adds one uniformly chosen absent link between the two communities,
// never re-adding `exclude`.
std::pair<Topology, Edge> compensate_link_loss(
    const Topology& t, CommunityPair pair, Rng& rng,
    std::optional<Edge> exclude = std::nullopt);

struct DetuningCompensation {
  HamiltonianSpec spec;
  int node = 0;
};

// Detunes a uniformly chosen node of `community` (other than `exclude`) by
// -delta_omega_estimate from its current frequency. Picking the defective
// node itself therefore undoes the defect.
DetuningCompensation compensate_detuning(const HamiltonianSpec& spec,
                                         int community,
                                         double delta_omega_estimate, Rng& rng,
                                         std::optional<int> exclude);

}  // namespace qnet
