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

#include <iosfwd>
#include <utility>
#include <vector>

#include "qnet/rng.hpp"

namespace qnet {

// Undirected edge, always stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Unordered pair of community ids, stored with first <= second.
struct CommunityPair {
  int first = 0;
  int second = 0;

  CommunityPair() = default;
  CommunityPair(int a, int b)
      : first(a < b ? a : b), second(a < b ? b : a) {}

  friend bool operator==(const CommunityPair&, const CommunityPair&) = default;
  friend auto operator<=>(const CommunityPair&, const CommunityPair&) = default;
};

struct SbmParams {
  int communities = 4;
  int community_size = 10;
  double p_int = 0.75;
  double p_bet = 0.025;

  int node_count() const { return communities * community_size; }
  void validate() const;
};

// Immutable undirected simple graph with a community label per node.
// Edits produce new values.
class Topology {
 public:
  // Throws if labels are not contiguous from 0 or edges are invalid.
  Topology(int n_nodes, std::vector<int> community_of, std::vector<Edge> edges);

  int node_count() const { return static_cast<int>(community_of_.size()); }
  int community_count() const { return community_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Sorted, duplicate-free.
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;

  int community_of(int node) const { return community_of_.at(node); }
  const std::vector<int>& community_labels() const { return community_of_; }
  std::vector<int> members(int community) const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::vector<int> community_of_;
  std::vector<Edge> edges_;
  int community_count_ = 0;
};

// Resamples the whole graph until it is connected.
Topology generate_sbm(const SbmParams& params, Rng& rng,
                      int max_attempts = 1000);

Topology generate_chain(int n, bool closed);

Eigen::MatrixXi laplacian(const Topology& t);

enum class LinkAction { kAdd, kRemove };

Topology edit_link(const Topology& t, int u, int v, LinkAction action);

bool is_connected(const Topology& t);

struct InterCommunityLink {
  Edge edge;
  CommunityPair pair;
};

struct LinkCensus {
  std::vector<Edge> internal;
  std::vector<InterCommunityLink> inter;
};

LinkCensus link_census(const Topology& t);

// Text format:
//   # communities <n_nodes>
//   # <label_0> <label_1> ... <label_{n-1}>
//   u v
//   ...
void write_edge_list(const Topology& t, std::ostream& out);
Topology read_edge_list(std::istream& in);

}  // namespace qnet
