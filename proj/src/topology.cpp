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

#include "qnet/topology.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "qnet/error.hpp"

namespace qnet {

void SbmParams::validate() const {
  require(communities >= 1, ErrorCode::kInvalidArgument,
          "SBM needs at least one community");
  require(community_size >= 1, ErrorCode::kInvalidArgument,
          "SBM community size must be positive");
  require(p_int >= 0.0 && p_int <= 1.0, ErrorCode::kInvalidArgument,
          "p_int must lie in [0, 1]");
  require(p_bet >= 0.0 && p_bet <= 1.0, ErrorCode::kInvalidArgument,
          "p_bet must lie in [0, 1]");
}

Topology::Topology(int n_nodes, std::vector<int> community_of,
                   std::vector<Edge> edges)
    : community_of_(std::move(community_of)), edges_(std::move(edges)) {
  require(n_nodes >= 1, ErrorCode::kInvalidArgument,
          "topology needs at least one node");
  require(static_cast<int>(community_of_.size()) == n_nodes,
          ErrorCode::kInvalidArgument, "one community label per node");

  std::vector<bool> seen;
  for (int c : community_of_) {
    require(c >= 0, ErrorCode::kInvalidArgument,
            "community labels must be non-negative");
    if (c >= static_cast<int>(seen.size())) seen.resize(c + 1, false);
    seen[c] = true;
  }
  require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }),
          ErrorCode::kInvalidArgument,
          "community labels must be contiguous from 0");
  community_count_ = static_cast<int>(seen.size());

  for (const Edge& e : edges_) {
    require(e.u != e.v, ErrorCode::kInvalidArgument, "self-loops not allowed");
    require(e.u >= 0 && e.v < n_nodes, ErrorCode::kInvalidArgument,
            "edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  require(std::adjacent_find(edges_.begin(), edges_.end()) == edges_.end(),
          ErrorCode::kInvalidArgument, "duplicate edge");
}

bool Topology::has_edge(int u, int v) const {
  if (u == v) return false;
  return std::binary_search(edges_.begin(), edges_.end(), Edge(u, v));
}

std::vector<int> Topology::members(int community) const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i) {
    if (community_of_[i] == community) out.push_back(i);
  }
  return out;
}

Topology generate_sbm(const SbmParams& params, Rng& rng, int max_attempts) {
  params.validate();
  const int n = params.node_count();
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i / params.community_size;

  std::bernoulli_distribution internal(params.p_int);
  std::bernoulli_distribution between(params.p_bet);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const bool same = labels[i] == labels[j];
        if (same ? internal(rng) : between(rng)) edges.emplace_back(i, j);
      }
    }
    Topology t(n, labels, std::move(edges));
    if (is_connected(t)) return t;
  }
  fail(ErrorCode::kDisconnected,
       "no connected SBM realization within " + std::to_string(max_attempts) +
           " attempts; parameters too sparse");
}

Topology generate_chain(int n, bool closed) {
  require(n >= (closed ? 3 : 2), ErrorCode::kInvalidArgument,
          closed ? "ring needs at least 3 nodes" : "path needs at least 2 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  if (closed) edges.emplace_back(0, n - 1);
  return Topology(n, std::vector<int>(n, 0), std::move(edges));
}

Eigen::MatrixXi laplacian(const Topology& t) {
  const int n = t.node_count();
  Eigen::MatrixXi lap = Eigen::MatrixXi::Zero(n, n);
  for (const Edge& e : t.edges()) {
    lap(e.u, e.v) -= 1;
    lap(e.v, e.u) -= 1;
    lap(e.u, e.u) += 1;
    lap(e.v, e.v) += 1;
  }
  return lap;
}

Topology edit_link(const Topology& t, int u, int v, LinkAction action) {
  const int n = t.node_count();
  require(u != v, ErrorCode::kInvalidArgument, "link endpoints must differ");
  require(u >= 0 && u < n && v >= 0 && v < n, ErrorCode::kInvalidArgument,
          "link endpoint out of range");
  std::vector<Edge> edges = t.edges();
  const Edge e(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  const bool present = it != edges.end() && *it == e;
  if (action == LinkAction::kRemove) {
    require(present, ErrorCode::kInvalidArgument,
            "cannot remove absent link " + std::to_string(e.u) + "-" +
                std::to_string(e.v));
    edges.erase(it);
  } else {
    require(!present, ErrorCode::kInvalidArgument,
            "cannot add existing link " + std::to_string(e.u) + "-" +
                std::to_string(e.v));
    edges.insert(it, e);
  }
  return Topology(n, t.community_labels(), std::move(edges));
}

bool is_connected(const Topology& t) {
  const int n = t.node_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const Edge& e : t.edges()) {
    const int a = find(e.u);
    const int b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

LinkCensus link_census(const Topology& t) {
  LinkCensus census;
  for (const Edge& e : t.edges()) {
    const int cu = t.community_of(e.u);
    const int cv = t.community_of(e.v);
    if (cu == cv) {
      census.internal.push_back(e);
    } else {
      census.inter.push_back({e, CommunityPair(cu, cv)});
    }
  }
  return census;
}

void write_edge_list(const Topology& t, std::ostream& out) {
  out << "# communities " << t.node_count() << '\n' << '#';
  for (int label : t.community_labels()) out << ' ' << label;
  out << '\n';
  for (const Edge& e : t.edges()) out << e.u << ' ' << e.v << '\n';
}

Topology read_edge_list(std::istream& in) {
  std::string line;
  int n = 0;
  {
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::kIo,
            "edge list: missing header");
    std::istringstream header(line);
    std::string hash, word;
    header >> hash >> word >> n;
    require(hash == "#" && word == "communities" && n >= 1, ErrorCode::kIo,
            "edge list: malformed header");
  }
  std::vector<int> labels;
  {
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::kIo,
            "edge list: missing label line");
    std::istringstream row(line);
    std::string hash;
    row >> hash;
    int label = 0;
    while (row >> label) labels.push_back(label);
    require(hash == "#" && static_cast<int>(labels.size()) == n,
            ErrorCode::kIo, "edge list: label count mismatch");
  }
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int u = 0, v = 0;
    require(static_cast<bool>(row >> u >> v), ErrorCode::kIo,
            "edge list: malformed edge line '" + line + "'");
    edges.emplace_back(u, v);
  }
  return Topology(n, std::move(labels), std::move(edges));
}

}  // namespace qnet
