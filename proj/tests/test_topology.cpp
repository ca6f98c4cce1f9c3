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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qnet/error.hpp"
#include "qnet/topology.hpp"

namespace qnet {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

Topology two_triangles() {
  return Topology(6, {0, 0, 0, 1, 1, 1},
                  {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

TEST(TopologyValue, EdgesAreNormalizedAndSorted) {
  const Topology t(3, {0, 0, 0}, {{2, 1}, {1, 0}});
  ASSERT_EQ(t.edge_count(), 2);
  EXPECT_EQ(t.edges()[0], Edge(0, 1));
  EXPECT_EQ(t.edges()[1], Edge(1, 2));
  EXPECT_TRUE(t.has_edge(2, 1));
  EXPECT_FALSE(t.has_edge(0, 2));
}

TEST(TopologyValue, RejectsInvalidInput) {
  EXPECT_THROW(Topology(2, {0, 0}, {{1, 1}}), Error);
  EXPECT_THROW(Topology(2, {0, 0}, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(Topology(2, {0, 0}, {{0, 2}}), Error);
  EXPECT_THROW(Topology(2, {0, 2}, {}), Error);
  EXPECT_THROW(Topology(3, {0, 0}, {}), Error);
}

TEST(TopologyValue, Members) {
  const Topology t = two_triangles();
  EXPECT_EQ(t.community_count(), 2);
  EXPECT_EQ(t.members(1), (std::vector<int>{3, 4, 5}));
}

TEST(Sbm, AllProbabilitiesOneGivesCompleteGraph) {
  Rng rng(1);
  const Topology t = generate_sbm({2, 3, 1.0, 1.0}, rng);
  EXPECT_EQ(t.node_count(), 6);
  EXPECT_EQ(t.edge_count(), 15);
}

TEST(Sbm, DisconnectedParametersFail) {
  Rng rng(1);
  EXPECT_EQ(code_of([&] { generate_sbm({2, 3, 1.0, 0.0}, rng, 20); }),
            ErrorCode::kDisconnected);
}

TEST(Sbm, RejectsInvalidParameters) {
  Rng rng(1);
  EXPECT_THROW(generate_sbm({0, 10, 0.5, 0.5}, rng), Error);
  EXPECT_THROW(generate_sbm({4, 10, 1.5, 0.5}, rng), Error);
  EXPECT_THROW(generate_sbm({4, 10, 0.5, -0.1}, rng), Error);
}

TEST(Sbm, CommunityLayoutIsBlockContiguous) {
  Rng rng(9);
  const Topology t = generate_sbm({}, rng);
  for (int i = 0; i < t.node_count(); ++i) EXPECT_EQ(t.community_of(i), i / 10);
}

TEST(Sbm, DefaultEnsembleMatchesExpectedCounts) {
  // Expected 4*45*0.75 = 135 internal and 6*100*0.025 = 15 inter links; the
  // connectivity conditioning biases inter links slightly upward.
  double internal = 0.0;
  double inter = 0.0;
  const int trials = 400;
  for (int s = 0; s < trials; ++s) {
    Rng rng = derive_stream(77, s);
    const Topology t = generate_sbm({}, rng);
    const LinkCensus census = link_census(t);
    internal += static_cast<double>(census.internal.size());
    inter += static_cast<double>(census.inter.size());
    EXPECT_TRUE(is_connected(t));
  }
  internal /= trials;
  inter /= trials;
  EXPECT_NEAR(internal, 135.0, 1.0);
  EXPECT_NEAR(inter, 15.0, 1.5);
  EXPECT_GT(internal / (internal + inter), 0.85);
}

TEST(Sbm, SameStreamSameGraph) {
  Rng a = derive_stream(5, 3);
  Rng b = derive_stream(5, 3);
  EXPECT_EQ(generate_sbm({}, a), generate_sbm({}, b));
}

TEST(Chain, OpenAndClosed) {
  const Topology path = generate_chain(3, false);
  EXPECT_EQ(path.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  const Topology ring = generate_chain(3, true);
  EXPECT_EQ(ring.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(ring.community_count(), 1);
}

TEST(Chain, TooShort) {
  EXPECT_THROW(generate_chain(2, true), Error);
  EXPECT_THROW(generate_chain(1, false), Error);
}

TEST(Laplacian, SmallGraphs) {
  Eigen::MatrixXi tri(3, 3);
  tri << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  EXPECT_EQ(laplacian(generate_chain(3, true)), tri);
  Eigen::MatrixXi pair(2, 2);
  pair << 1, -1, -1, 1;
  EXPECT_EQ(laplacian(generate_chain(2, false)), pair);
}

TEST(Laplacian, RingSpectrum) {
  for (int n : {5, 12}) {
    const Eigen::MatrixXd l = laplacian(generate_chain(n, true)).cast<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
    std::vector<double> expected;
    for (int k = 0; k < n; ++k) {
      expected.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n));
    }
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < n; ++k) EXPECT_NEAR(solver.eigenvalues()(k), expected[k], 1e-12);
  }
}

TEST(Laplacian, RowsSumToZeroAndDiagonalIsDegree) {
  for (int s = 0; s < 20; ++s) {
    Rng rng = derive_stream(3, s);
    const Topology t = generate_sbm({3, 7, 0.6, 0.1}, rng);
    const Eigen::MatrixXi l = laplacian(t);
    EXPECT_TRUE((l.rowwise().sum().array() == 0).all());
    EXPECT_EQ(l, l.transpose());
    std::vector<int> degree(t.node_count(), 0);
    for (const Edge& e : t.edges()) {
      ++degree[e.u];
      ++degree[e.v];
    }
    for (int i = 0; i < t.node_count(); ++i) EXPECT_EQ(l(i, i), degree[i]);
  }
}

TEST(EditLink, RemoveThenAddIsIdentity) {
  Rng rng(4);
  const Topology t = generate_sbm({}, rng);
  for (const Edge& e : t.edges()) {
    const Topology removed = edit_link(t, e.u, e.v, LinkAction::kRemove);
    EXPECT_EQ(removed.edge_count(), t.edge_count() - 1);
    EXPECT_EQ(removed.community_labels(), t.community_labels());
    EXPECT_EQ(edit_link(removed, e.v, e.u, LinkAction::kAdd), t);
  }
}

TEST(EditLink, PreconditionViolations) {
  const Topology path = generate_chain(4, false);
  EXPECT_THROW(edit_link(path, 0, 1, LinkAction::kAdd), Error);
  EXPECT_THROW(edit_link(path, 0, 2, LinkAction::kRemove), Error);
  EXPECT_THROW(edit_link(path, 2, 2, LinkAction::kAdd), Error);
  EXPECT_THROW(edit_link(path, 0, 9, LinkAction::kAdd), Error);
}

TEST(EditLink, RemovingPathBridgeDisconnects) {
  EXPECT_FALSE(is_connected(edit_link(generate_chain(5, false), 2, 3,
                                      LinkAction::kRemove)));
}

TEST(Connectivity, Cases) {
  EXPECT_TRUE(is_connected(generate_chain(6, false)));
  EXPECT_FALSE(is_connected(two_triangles()));
  EXPECT_TRUE(is_connected(Topology(1, {0}, {})));
}

TEST(Census, SingleCommunityIsAllInternal) {
  const LinkCensus c = link_census(generate_chain(7, true));
  EXPECT_EQ(c.internal.size(), 7u);
  EXPECT_TRUE(c.inter.empty());
}

TEST(Census, CompleteBipartiteIsAllInter) {
  std::vector<Edge> edges;
  for (int a = 0; a < 3; ++a) {
    for (int b = 3; b < 6; ++b) edges.emplace_back(a, b);
  }
  const LinkCensus c = link_census(Topology(6, {0, 0, 0, 1, 1, 1}, edges));
  EXPECT_TRUE(c.internal.empty());
  ASSERT_EQ(c.inter.size(), 9u);
  for (const auto& link : c.inter) EXPECT_EQ(link.pair, CommunityPair(1, 0));
}

TEST(Census, PartitionsEdgesConsistentlyWithLabels) {
  for (int s = 0; s < 20; ++s) {
    Rng rng = derive_stream(8, s);
    const Topology t = generate_sbm({}, rng);
    const LinkCensus c = link_census(t);
    EXPECT_EQ(c.internal.size() + c.inter.size(),
              static_cast<std::size_t>(t.edge_count()));
    for (const Edge& e : c.internal) {
      EXPECT_EQ(t.community_of(e.u), t.community_of(e.v));
    }
    for (const auto& link : c.inter) {
      EXPECT_NE(t.community_of(link.edge.u), t.community_of(link.edge.v));
      EXPECT_EQ(link.pair, CommunityPair(t.community_of(link.edge.u),
                                         t.community_of(link.edge.v)));
    }
  }
}

TEST(EdgeList, RoundTrip) {
  Rng rng(21);
  const Topology t = generate_sbm({3, 5, 0.8, 0.2}, rng);
  std::stringstream buffer;
  write_edge_list(t, buffer);
  EXPECT_EQ(read_edge_list(buffer), t);
}

TEST(EdgeList, Format) {
  std::stringstream buffer;
  write_edge_list(generate_chain(3, false), buffer);
  EXPECT_EQ(buffer.str(), "# communities 3\n# 0 0 0\n0 1\n1 2\n");
}

TEST(EdgeList, MalformedInputThrows) {
  std::stringstream missing_header("0 1\n");
  EXPECT_THROW(read_edge_list(missing_header), Error);
  std::stringstream bad_edge("# communities 2\n# 0 0\n0 x\n");
  EXPECT_THROW(read_edge_list(bad_edge), Error);
}

}  // namespace
}  // namespace qnet
