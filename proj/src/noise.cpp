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

#include "qnet/noise.hpp"

#include <algorithm>
#include <string>

#include "qnet/error.hpp"

namespace qnet {

std::pair<Topology, LinkLoss> apply_link_loss(const Topology& t, Rng& rng,
                                              LinkKind kind) {
  const LinkCensus census = link_census(t);
  std::vector<Edge> candidates;
  if (kind == LinkKind::kInternal) {
    candidates = census.internal;
  } else {
    for (const auto& link : census.inter) candidates.push_back(link.edge);
  }
  require(!candidates.empty(), ErrorCode::kNoCandidate,
          "no link of the requested kind");
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (const Edge& e : candidates) {
    Topology removed = edit_link(t, e.u, e.v, LinkAction::kRemove);
    if (is_connected(removed)) {
      return {std::move(removed),
              LinkLoss{e, CommunityPair(t.community_of(e.u),
                                        t.community_of(e.v))}};
    }
  }
  fail(ErrorCode::kDisconnected,
       "every link of the requested kind is a bridge");
}

std::pair<Topology, LinkLoss> apply_link_loss(const Topology& t, Edge edge) {
  Topology removed = edit_link(t, edge.u, edge.v, LinkAction::kRemove);
  require(is_connected(removed), ErrorCode::kDisconnected,
          "removing link " + std::to_string(edge.u) + "-" +
              std::to_string(edge.v) + " disconnects the network");
  return {std::move(removed),
          LinkLoss{edge, CommunityPair(t.community_of(edge.u),
                                       t.community_of(edge.v))}};
}

std::pair<HamiltonianSpec, Detuning> apply_detuning(const HamiltonianSpec& spec,
                                                    int node,
                                                    double delta_omega) {
  require(node >= 0 && node < spec.topology.node_count(),
          ErrorCode::kInvalidArgument, "detuned node out of range");
  const double omega = spec.frequencies(node) + delta_omega;
  require(omega > 0.0, ErrorCode::kInvalidArgument,
          "detuned frequency must stay positive");
  HamiltonianSpec out = spec;
  out.frequencies(node) = omega;
  return {std::move(out), Detuning{node, omega}};
}

std::pair<Topology, Edge> compensate_link_loss(const Topology& t,
                                               CommunityPair pair, Rng& rng,
                                               std::optional<Edge> exclude) {
  require(pair.first != pair.second, ErrorCode::kInvalidArgument,
          "compensation needs two distinct communities");
  require(pair.second < t.community_count(), ErrorCode::kInvalidArgument,
          "community id out of range");
  std::vector<Edge> candidates;
  for (int u : t.members(pair.first)) {
    for (int v : t.members(pair.second)) {
      const Edge e(u, v);
      if (t.has_edge(u, v) || (exclude && *exclude == e)) continue;
      candidates.push_back(e);
    }
  }
  require(!candidates.empty(), ErrorCode::kNoCandidate,
          "no absent link between the communities");
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  const Edge e = candidates[pick(rng)];
  return {edit_link(t, e.u, e.v, LinkAction::kAdd), e};
}

DetuningCompensation compensate_detuning(const HamiltonianSpec& spec,
                                         int community,
                                         double delta_omega_estimate, Rng& rng,
                                         std::optional<int> exclude) {
  require(community >= 0 && community < spec.topology.community_count(),
          ErrorCode::kInvalidArgument, "community id out of range");
  std::vector<int> candidates = spec.topology.members(community);
  if (exclude) std::erase(candidates, *exclude);
  require(!candidates.empty(), ErrorCode::kNoCandidate,
          "no eligible node in the community");
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  const int node = candidates[pick(rng)];
  const double omega = spec.frequencies(node) - delta_omega_estimate;
  require(omega > 0.0, ErrorCode::kInvalidArgument,
          "compensating frequency must stay positive");
  HamiltonianSpec out = spec;
  out.frequencies(node) = omega;
  return {std::move(out), node};
}

}  // namespace qnet
