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

#include "qnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "qnet/error.hpp"
#include "qnet/gaussian.hpp"
#include "qnet/noise.hpp"
#include "qnet/rng.hpp"
#include "qnet/spectral.hpp"
#include "qnet/transfer.hpp"

namespace qnet {
namespace {

constexpr std::pair<Scenario, std::string_view> kScenarioNames[] = {
    {Scenario::kFig2, "fig2"},   {Scenario::kFig3, "fig3"},
    {Scenario::kFig4, "fig4"},   {Scenario::kFig5, "fig5"},
    {Scenario::kFig5c, "fig5c"}, {Scenario::kFig6, "fig6"},
    {Scenario::kFig7, "fig7"},   {Scenario::kAppA, "appA"},
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string pair_label(CommunityPair p) {
  return std::to_string(p.first) + "-" + std::to_string(p.second);
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_value(Value(values[i]));
  }
  return out;
}

struct NodePair {
  int sender = 0;
  int receiver = 0;
};

int uniform_member(const std::vector<int>& members, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  return members[pick(rng)];
}

// `per_cell` sender/receiver draws for every ordered community pair.
std::vector<NodePair> sample_pairs(const Topology& t, int per_cell, Rng& rng) {
  std::vector<NodePair> pairs;
  const int n_comm = t.community_count();
  for (int a = 0; a < n_comm; ++a) {
    const std::vector<int> from = t.members(a);
    for (int b = 0; b < n_comm; ++b) {
      const std::vector<int> to = t.members(b);
      if (a == b && to.size() < 2) continue;
      for (int k = 0; k < per_cell; ++k) {
        const int s = uniform_member(from, rng);
        int r = uniform_member(to, rng);
        while (r == s) r = uniform_member(to, rng);
        pairs.push_back({s, r});
      }
    }
  }
  return pairs;
}

// `count` distinct-node pairs drawn from `members`.
std::vector<NodePair> sample_pairs_within(const std::vector<int>& members,
                                          int count, Rng& rng) {
  require(members.size() >= 2, ErrorCode::kNoCandidate,
          "need two nodes to form a pair");
  std::vector<NodePair> pairs;
  for (int k = 0; k < count; ++k) {
    const int s = uniform_member(members, rng);
    int r = uniform_member(members, rng);
    while (r == s) r = uniform_member(members, rng);
    pairs.push_back({s, r});
  }
  return pairs;
}

struct ModeFidelity {
  CommunityFidelityStats stats;
  double mean_at_t_ideal = 0.0;
};

// Plans on `planning`, runs on `actual`.
ModeFidelity mode_fidelity(const NormalModeBasis& planning,
                           const HamiltonianSpec& actual, int mode,
                           const std::vector<NodePair>& pairs,
                           const ExperimentConfig& cfg) {
  std::vector<PairFidelity> samples;
  samples.reserve(pairs.size());
  double at_ideal = 0.0;
  // Pairs the mode cannot serve (decoupled node, or a tuned coupling so
  // strong the Hamiltonian is unstable) keep the receiver in its vacuum.
  const double no_transfer = 1.0 / std::cosh(cfg.squeezing);
  for (const NodePair& p : pairs) {
    double f_max = no_transfer;
    double f_ideal = no_transfer;
    try {
      const TransferPlan plan =
          plan_transfer(planning, mode, p.sender, p.receiver, cfg.c);
      const TransferWindow window{
          cfg.window_periods * 2.0 * std::numbers::pi / plan.omega_ext,
          cfg.window_samples};
      const TransferResult result = simulate_transfer(
          actual, plan, squeezed_vacuum(plan.omega_ext, cfg.squeezing),
          window);
      f_max = result.fidelity_max;
      f_ideal = result.fidelity_at_t_ideal;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotPositiveDefinite &&
          e.code() != ErrorCode::kDecoupled) {
        throw;
      }
    }
    samples.push_back({actual.topology.community_of(p.sender),
                       actual.topology.community_of(p.receiver), f_max});
    at_ideal += f_ideal;
  }
  return {community_fidelity_stats(samples),
          at_ideal / static_cast<double>(pairs.size())};
}

double max_coupling_deviation(const std::vector<double>& couplings, int n) {
  const double ref = 1.0 / std::sqrt(static_cast<double>(n));
  double dev = 0.0;
  for (double c : couplings) dev = std::max(dev, std::abs(c - ref));
  return dev;
}

using Rows = std::vector<EnsembleRecord>;

void emit(Rows& rows, std::vector<Value> values) {
  rows.push_back({std::move(values)});
}

// --- scenarios ------------------------------------------------------------

std::vector<std::string> fig2_columns(const ExperimentConfig&) {
  return {"realization", "case", "links_removed", "rank", "relative_shift"};
}

Rows fig2_realization(const ExperimentConfig& cfg, int index, Rng& rng) {
  const Topology t = generate_sbm(cfg.sbm, rng);
  const NormalModeBasis before = normal_modes(
      HamiltonianSpec::homogeneous(t, cfg.omega0, cfg.coupling));
  const int last = t.community_count() - 1;
  require(last >= 1, ErrorCode::kInvalidArgument,
          "link-loss shifts need at least two communities");

  Rows rows;
  auto record = [&](const std::string& label, int removed,
                    const Topology& noisy) {
    const NormalModeBasis after = normal_modes(
        HamiltonianSpec::homogeneous(noisy, cfg.omega0, cfg.coupling));
    std::vector<double> shifts = mode_frequency_shifts(before, after, 1, last);
    std::stable_sort(shifts.begin(), shifts.end(), [](double a, double b) {
      return std::abs(a) > std::abs(b);
    });
    for (std::size_t r = 0; r < shifts.size(); ++r) {
      emit(rows, {std::int64_t{index}, label, std::int64_t{removed},
                  static_cast<std::int64_t>(r), shifts[r]});
    }
  };

  record("inter", 1, apply_link_loss(t, rng, LinkKind::kInterCommunity).first);
  Topology internal = t;
  for (int k = 1; k <= 3; ++k) {
    internal = apply_link_loss(internal, rng, LinkKind::kInternal).first;
    record("internal", k, internal);
  }
  return rows;
}

std::vector<std::string> fig3_columns(const ExperimentConfig&) {
  return {"realization", "case",  "mode", "relative_shift",
          "best",        "top2",  "mean", "mean_at_t_ideal"};
}

Rows fig3_realization(const ExperimentConfig& cfg, int index, Rng& rng) {
  const Topology t = generate_sbm(cfg.sbm, rng);
  const HamiltonianSpec clean =
      HamiltonianSpec::homogeneous(t, cfg.omega0, cfg.coupling);
  const NormalModeBasis planning = normal_modes(clean);
  const int n_comm = t.community_count();
  require(n_comm >= 3, ErrorCode::kInvalidArgument,
          "fig3 needs at least three communities");
  const std::vector<NodePair> pairs = sample_pairs(t, cfg.pairs_per_cell, rng);

  auto [lossy, loss] = apply_link_loss(t, rng, LinkKind::kInterCommunity);
  Topology fixed = compensate_link_loss(lossy, loss.pair, rng, loss.edge).first;

  // A different community pair, uniformly among the rest.
  std::vector<CommunityPair> others;
  for (int a = 0; a < n_comm; ++a) {
    for (int b = a + 1; b < n_comm; ++b) {
      if (CommunityPair(a, b) != loss.pair) others.emplace_back(a, b);
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, others.size() - 1);
  Topology wrong = compensate_link_loss(lossy, others[pick(rng)], rng).first;

  const std::pair<std::string, const Topology*> cases[] = {
      {"lossless", &t}, {"lossy", &lossy}, {"compensated", &fixed},
      {"wrong_pair", &wrong}};
  Rows rows;
  for (const auto& [label, topo] : cases) {
    const HamiltonianSpec actual =
        HamiltonianSpec::homogeneous(*topo, cfg.omega0, cfg.coupling);
    const NormalModeBasis after = normal_modes(actual);
    for (int mode = 0; mode < n_comm; ++mode) {
      const double shift =
          mode_frequency_shifts(planning, after, mode, mode).front();
      const ModeFidelity f = mode_fidelity(planning, actual, mode, pairs, cfg);
      emit(rows, {std::int64_t{index}, label, std::int64_t{mode}, shift,
                  f.stats.best, f.stats.top2, f.stats.mean, f.mean_at_t_ideal});
    }
  }
  return rows;
}

std::vector<std::string> fig4_columns(const ExperimentConfig&) {
  return {"realization", "communities", "community_size", "p_bet",
          "true_pair",   "detected_pair", "hit",          "baseline"};
}

struct GridCell {
  int communities;
  int community_size;
  double p_bet;
};

std::vector<GridCell> grid_cells(const ExperimentConfig& cfg) {
  std::vector<GridCell> cells;
  for (int n : cfg.grid.communities) {
    for (int size : cfg.grid.community_sizes) {
      for (double p : cfg.grid.p_bets) cells.push_back({n, size, p});
    }
  }
  return cells;
}

Rows fig4_realization(const ExperimentConfig& cfg, const GridCell& cell,
                      int index, Rng& rng) {
  SbmParams params = cfg.sbm;
  params.communities = cell.communities;
  params.community_size = cell.community_size;
  params.p_bet = cell.p_bet;
  const Topology t = generate_sbm(params, rng);
  const NormalModeBasis before = normal_modes(
      HamiltonianSpec::homogeneous(t, cfg.omega0, cfg.coupling));
  auto [lossy, loss] = apply_link_loss(t, rng, LinkKind::kInterCommunity);
  const NormalModeBasis after = normal_modes(
      HamiltonianSpec::homogeneous(lossy, cfg.omega0, cfg.coupling));

  std::string detected = "none";
  bool hit = false;
  try {
    const CommunityPair guess =
        detect_lost_link_pair(before, after.frequencies, t);
    detected = pair_label(guess);
    hit = guess == loss.pair;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoDetectableLoss) throw;
  }
  const int n = cell.communities;
  const double baseline = 2.0 / (n * (n - 1.0));
  return {{{std::int64_t{index}, std::int64_t{cell.communities},
            std::int64_t{cell.community_size}, cell.p_bet,
            pair_label(loss.pair), detected, std::int64_t{hit ? 1 : 0},
            baseline}}};
}

std::vector<std::string> fig5_columns(const ExperimentConfig& cfg) {
  std::vector<std::string> cols = {
      "realization",    "delta_omega",     "true_omega",
      "detuned_node",   "true_community",  "omega0",
      "omega0_shift",   "estimated_omega", "detected_community",
      "hit"};
  for (int c = 0; c < cfg.sbm.communities; ++c) {
    cols.push_back("coupling_" + std::to_string(c));
  }
  return cols;
}

Rows fig5_realization(const ExperimentConfig& cfg, int index, Rng& rng) {
  const Topology t = generate_sbm(cfg.sbm, rng);
  const HamiltonianSpec clean =
      HamiltonianSpec::homogeneous(t, cfg.omega0, cfg.coupling);
  const int node = uniform_member(t.members(cfg.detuned_community), rng);
  const int n = t.node_count();

  Rows rows;
  for (double dw : cfg.detunings) {
    const auto [spec, event] = apply_detuning(clean, node, dw);
    const NormalModeBasis basis = normal_modes(spec);
    const double omega0 = basis.frequencies(0);
    const std::vector<double> couplings = community_mode_coupling(basis, t, 0);
    const int detected = detect_detuned_community(couplings, n);
    double estimate = kNaN;
    try {
      estimate = estimate_detuning(omega0, n, cfg.omega0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEstimatorDomain) throw;
    }
    std::vector<Value> row = {
        std::int64_t{index},
        dw,
        event.omega,
        std::int64_t{node},
        std::int64_t{t.community_of(node)},
        omega0,
        omega0 - cfg.omega0,
        estimate,
        std::int64_t{detected},
        std::int64_t{detected == t.community_of(node) ? 1 : 0}};
    for (double c : couplings) row.emplace_back(c);
    emit(rows, std::move(row));
  }
  return rows;
}

std::vector<std::string> fig5c_columns(const ExperimentConfig&) {
  return {"realization", "delta_omega", "mode", "relative_shift",
          "best",        "top2",        "mean", "mean_at_t_ideal"};
}

Rows fig5c_realization(const ExperimentConfig& cfg, int index, Rng& rng) {
  const Topology t = generate_sbm(cfg.sbm, rng);
  const HamiltonianSpec clean =
      HamiltonianSpec::homogeneous(t, cfg.omega0, cfg.coupling);
  const NormalModeBasis planning = normal_modes(clean);
  const int node = uniform_member(t.members(cfg.detuned_community), rng);
  const std::vector<NodePair> pairs = sample_pairs(t, cfg.pairs_per_cell, rng);

  Rows rows;
  for (double dw : cfg.detunings) {
    const HamiltonianSpec actual = apply_detuning(clean, node, dw).first;
    const NormalModeBasis after = normal_modes(actual);
    for (int mode = 0; mode < t.community_count(); ++mode) {
      const double shift =
          mode_frequency_shifts(planning, after, mode, mode).front();
      const ModeFidelity f = mode_fidelity(planning, actual, mode, pairs, cfg);
      emit(rows, {std::int64_t{index}, dw, std::int64_t{mode}, shift,
                  f.stats.best, f.stats.top2, f.stats.mean, f.mean_at_t_ideal});
    }
  }
  return rows;
}

std::vector<std::string> fig6_columns(const ExperimentConfig&) {
  return {"realization",   "delta_omega",        "case",
          "community",     "compensating_node",  "mode",
          "relative_shift", "omega0",            "coupling_deviation",
          "best",          "top2",               "mean"};
}

Rows fig6_realization(const ExperimentConfig& cfg, int index, Rng& rng) {
  const Topology t = generate_sbm(cfg.sbm, rng);
  const int n = t.node_count();
  const int n_comm = t.community_count();
  require(n_comm >= 2, ErrorCode::kInvalidArgument,
          "fig6 needs at least two communities");
  const HamiltonianSpec clean =
      HamiltonianSpec::homogeneous(t, cfg.omega0, cfg.coupling);
  const NormalModeBasis planning = normal_modes(clean);
  const int node = uniform_member(t.members(cfg.detuned_community), rng);
  const std::vector<NodePair> pairs = sample_pairs(t, cfg.pairs_per_cell, rng);

  Rows rows;
  for (double dw : cfg.detunings) {
    const HamiltonianSpec detuned = apply_detuning(clean, node, dw).first;
    const NormalModeBasis noisy = normal_modes(detuned);

    // Identification uses only probed quantities, never the ground truth.
    const int community = detect_detuned_community(
        community_mode_coupling(noisy, t, 0), n);
    const double dw_est =
        estimate_detuning(noisy.frequencies(0), n, cfg.omega0) - cfg.omega0;
    const std::optional<int> exclude =
        cfg.exclude_defective ? std::optional<int>(node) : std::nullopt;
    const DetuningCompensation same =
        compensate_detuning(detuned, community, dw_est, rng, exclude);
    std::uniform_int_distribution<int> pick_other(0, n_comm - 2);
    int other = pick_other(rng);
    if (other >= community) ++other;
    const DetuningCompensation elsewhere = compensate_detuning(
        detuned, other, dw_est, rng, std::nullopt);

    struct Case {
      std::string label;
      const HamiltonianSpec* spec;
      int community;
      int node;
    };
    const Case cases[] = {
        {"detuned", &detuned, community, -1},
        {"compensated", &same.spec, community, same.node},
        {"compensated_other", &elsewhere.spec, other, elsewhere.node}};
    for (const Case& c : cases) {
      const NormalModeBasis after = normal_modes(*c.spec);
      const double deviation =
          max_coupling_deviation(community_mode_coupling(after, t, 0), n);
      for (int mode = 0; mode < n_comm; ++mode) {
        const double shift =
            mode_frequency_shifts(planning, after, mode, mode).front();
        const ModeFidelity f =
            mode_fidelity(planning, *c.spec, mode, pairs, cfg);
        emit(rows, {std::int64_t{index}, dw, c.label,
                    std::int64_t{c.community}, std::int64_t{c.node},
                    std::int64_t{mode}, shift, after.frequencies(0), deviation,
                    f.stats.best, f.stats.top2, f.stats.mean});
      }
    }
  }
  return rows;
}

std::vector<std::string> fig7_columns(const ExperimentConfig&) {
  return {"realization", "case",     "omega_detuned", "mode",
          "pair",        "sender",   "receiver",      "en_fraction"};
}

Rows fig7_realization(const ExperimentConfig& cfg, int index, Rng& rng) {
  const Topology t = generate_sbm(cfg.sbm, rng);
  const HamiltonianSpec clean =
      HamiltonianSpec::homogeneous(t, cfg.omega0, cfg.coupling);
  const NormalModeBasis planning = normal_modes(clean);
  const int n_comm = t.community_count();

  // Mode 0 pairs span the network; higher modes use the community that
  // couples most strongly to them.
  std::vector<std::vector<NodePair>> pairs(n_comm);
  std::vector<int> everyone(t.node_count());
  for (int i = 0; i < t.node_count(); ++i) everyone[i] = i;
  pairs[0] = sample_pairs_within(everyone, cfg.pairs_per_cell, rng);
  for (int mode = 1; mode < n_comm; ++mode) {
    const std::vector<double> c = community_mode_coupling(planning, t, mode);
    const int best = static_cast<int>(
        std::max_element(c.begin(), c.end()) - c.begin());
    pairs[mode] = sample_pairs_within(t.members(best), cfg.pairs_per_cell, rng);
  }

  const Topology lossy =
      apply_link_loss(t, rng, LinkKind::kInterCommunity).first;
  std::uniform_int_distribution<int> pick_node(0, t.node_count() - 1);
  const int detuned_node = pick_node(rng);

  struct Case {
    std::string label;
    HamiltonianSpec spec;
    double omega;
  };
  std::vector<Case> cases;
  cases.push_back({"noiseless", clean, kNaN});
  cases.push_back({"link_loss",
                   HamiltonianSpec::homogeneous(lossy, cfg.omega0, cfg.coupling),
                   kNaN});
  for (double dw : cfg.detunings) {
    auto [spec, event] = apply_detuning(clean, detuned_node, dw);
    cases.push_back({"detuned", std::move(spec), event.omega});
  }

  Rows rows;
  for (const Case& c : cases) {
    for (int mode = 0; mode < n_comm; ++mode) {
      for (std::size_t k = 0; k < pairs[mode].size(); ++k) {
        const NodePair& p = pairs[mode][k];
        double fraction = 0.0;
        try {
          const TransferPlan plan =
              plan_transfer(planning, mode, p.sender, p.receiver, cfg.c);
          fraction = entanglement_transfer(c.spec, plan, cfg.squeezing);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNotPositiveDefinite &&
              e.code() != ErrorCode::kDecoupled) {
            throw;
          }
        }
        emit(rows, {std::int64_t{index}, c.label, c.omega, std::int64_t{mode},
                    static_cast<std::int64_t>(k), std::int64_t{p.sender},
                    std::int64_t{p.receiver}, fraction});
      }
    }
  }
  return rows;
}

std::vector<std::string> appa_columns(const ExperimentConfig&) {
  return {"realization",         "network",
          "n_nodes",             "max_frequency",
          "min_low_gap",         "connected_after_one",
          "max_shift_after_one", "connected_after_two"};
}

Rows appa_realization(const ExperimentConfig& cfg, int index, Rng& rng) {
  const int n = cfg.sbm.node_count();
  const int low = cfg.sbm.communities;
  const std::pair<std::string, Topology> networks[] = {
      {"ring", generate_chain(n, true)},
      {"path", generate_chain(n, false)},
      {"sbm", generate_sbm(cfg.sbm, rng)}};

  auto remove_random = [&](const Topology& t) {
    std::uniform_int_distribution<int> pick(0, t.edge_count() - 1);
    const Edge e = t.edges()[pick(rng)];
    return edit_link(t, e.u, e.v, LinkAction::kRemove);
  };

  Rows rows;
  for (const auto& [label, t] : networks) {
    const NormalModeBasis basis = normal_modes(
        HamiltonianSpec::homogeneous(t, cfg.omega0, cfg.coupling));
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < std::min(low, n - 1); ++k) {
      gap = std::min(gap, basis.frequencies(k + 1) - basis.frequencies(k));
    }
    const Topology once = remove_random(t);
    const bool connected_one = is_connected(once);
    double max_shift = kNaN;
    if (connected_one && low >= 2) {
      const NormalModeBasis after = normal_modes(
          HamiltonianSpec::homogeneous(once, cfg.omega0, cfg.coupling));
      max_shift = 0.0;
      for (double s : mode_frequency_shifts(basis, after, 1, low - 1)) {
        max_shift = std::max(max_shift, std::abs(s));
      }
    }
    const bool connected_two =
        connected_one && once.edge_count() > 0 && is_connected(remove_random(once));
    emit(rows, {std::int64_t{index}, label, std::int64_t{n},
                basis.frequencies(n - 1), gap,
                std::int64_t{connected_one ? 1 : 0}, max_shift,
                std::int64_t{connected_two ? 1 : 0}});
  }
  return rows;
}

std::vector<std::string> columns_for(const ExperimentConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::kFig2: return fig2_columns(cfg);
    case Scenario::kFig3: return fig3_columns(cfg);
    case Scenario::kFig4: return fig4_columns(cfg);
    case Scenario::kFig5: return fig5_columns(cfg);
    case Scenario::kFig5c: return fig5c_columns(cfg);
    case Scenario::kFig6: return fig6_columns(cfg);
    case Scenario::kFig7: return fig7_columns(cfg);
    case Scenario::kAppA: return appa_columns(cfg);
  }
  fail(ErrorCode::kInvalidArgument, "unknown scenario");
}

int unit_count(const ExperimentConfig& cfg) {
  if (cfg.scenario == Scenario::kFig4) {
    return static_cast<int>(grid_cells(cfg).size()) * cfg.ensemble;
  }
  return cfg.ensemble;
}

Rows run_unit(const ExperimentConfig& cfg, int unit) {
  Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(unit),
                          static_cast<std::uint64_t>(cfg.scenario));
  const int index = unit % cfg.ensemble;
  switch (cfg.scenario) {
    case Scenario::kFig2: return fig2_realization(cfg, index, rng);
    case Scenario::kFig3: return fig3_realization(cfg, index, rng);
    case Scenario::kFig4:
      return fig4_realization(cfg, grid_cells(cfg)[unit / cfg.ensemble], index,
                              rng);
    case Scenario::kFig5: return fig5_realization(cfg, index, rng);
    case Scenario::kFig5c: return fig5c_realization(cfg, index, rng);
    case Scenario::kFig6: return fig6_realization(cfg, index, rng);
    case Scenario::kFig7: return fig7_realization(cfg, index, rng);
    case Scenario::kAppA: return appa_realization(cfg, index, rng);
  }
  fail(ErrorCode::kInvalidArgument, "unknown scenario");
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& [id, name] : kScenarioNames) {
    if (id == s) return name;
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const auto& [id, label] : kScenarioNames) {
    if (label == name) return id;
  }
  return std::nullopt;
}

std::vector<Scenario> all_scenarios() {
  std::vector<Scenario> out;
  for (const auto& entry : kScenarioNames) out.push_back(entry.first);
  return out;
}

ExperimentConfig ExperimentConfig::defaults(Scenario s) {
  ExperimentConfig cfg;
  cfg.scenario = s;
  switch (s) {
    case Scenario::kFig2:
    case Scenario::kAppA:
      cfg.ensemble = 100;
      break;
    case Scenario::kFig4:
      cfg.ensemble = 200;
      break;
    case Scenario::kFig5:
      cfg.ensemble = 100;
      cfg.detunings = {-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3};
      break;
    case Scenario::kFig3:
      cfg.ensemble = 20;
      break;
    case Scenario::kFig5c:
      cfg.ensemble = 20;
      cfg.detunings = {0.0, -0.1, -0.2, -0.3};
      break;
    case Scenario::kFig6:
      cfg.ensemble = 20;
      cfg.detunings = {-0.1, -0.2, -0.3};
      break;
    case Scenario::kFig7:
      cfg.ensemble = 20;
      cfg.detunings = {0.2, 0.5};
      break;
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  sbm.validate();
  require(ensemble >= 1, ErrorCode::kInvalidArgument,
          "ensemble size must be at least 1");
  require(omega0 > 0.0 && coupling > 0.0, ErrorCode::kInvalidArgument,
          "omega0 and coupling must be positive");
  require(c >= 1, ErrorCode::kInvalidArgument, "c must be at least 1");
  require(squeezing > 0.0, ErrorCode::kInvalidArgument,
          "squeezing must be positive");
  require(window_samples >= 1, ErrorCode::kInvalidArgument,
          "window needs at least one sample");
  require(window_periods >= 0.0, ErrorCode::kInvalidArgument,
          "window width must be non-negative");
  require(pairs_per_cell >= 1, ErrorCode::kInvalidArgument,
          "need at least one pair per community cell");
  for (double dw : detunings) {
    require(omega0 + dw > 0.0, ErrorCode::kInvalidArgument,
            "detuned frequency must stay positive");
  }
  const bool uses_detuned_community = scenario == Scenario::kFig5 ||
                                      scenario == Scenario::kFig5c ||
                                      scenario == Scenario::kFig6;
  if (uses_detuned_community) {
    require(detuned_community >= 0 && detuned_community < sbm.communities,
            ErrorCode::kInvalidArgument, "detuned community out of range");
    require(!detunings.empty(), ErrorCode::kInvalidArgument,
            "detuning list is empty");
  }
  if (scenario == Scenario::kFig4) {
    require(!grid.communities.empty() && !grid.community_sizes.empty() &&
                !grid.p_bets.empty(),
            ErrorCode::kInvalidArgument, "detection grid is empty");
    for (int n : grid.communities) {
      require(n >= 2, ErrorCode::kInvalidArgument,
              "detection needs at least two communities");
    }
    for (int s : grid.community_sizes) {
      require(s >= 1, ErrorCode::kInvalidArgument,
              "community size must be positive");
    }
    for (double p : grid.p_bets) {
      require(p >= 0.0 && p <= 1.0, ErrorCode::kInvalidArgument,
              "p_bet must lie in [0, 1]");
    }
  }
  if (scenario == Scenario::kAppA) {
    require(sbm.node_count() >= 3, ErrorCode::kInvalidArgument,
            "chain comparison needs at least 3 nodes");
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo()
    const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"scenario", std::string(scenario_name(scenario))},
      {"seed", std::to_string(seed)},
      {"ensemble", std::to_string(ensemble)},
      {"communities", std::to_string(sbm.communities)},
      {"community_size", std::to_string(sbm.community_size)},
      {"p_int", format_value(sbm.p_int)},
      {"p_bet", format_value(sbm.p_bet)},
      {"omega0", format_value(omega0)},
      {"coupling", format_value(coupling)},
      {"c", std::to_string(c)},
      {"squeezing", format_value(squeezing)},
      {"detunings", join(detunings)},
      {"window_samples", std::to_string(window_samples)},
      {"window_periods", format_value(window_periods)},
      {"pairs_per_cell", std::to_string(pairs_per_cell)},
      {"detuned_community", std::to_string(detuned_community)},
      {"exclude_defective", exclude_defective ? "1" : "0"},
  };
  if (scenario == Scenario::kFig4) {
    std::vector<std::int64_t> comms(grid.communities.begin(),
                                    grid.communities.end());
    std::vector<std::int64_t> sizes(grid.community_sizes.begin(),
                                    grid.community_sizes.end());
    out.emplace_back("grid_communities", join(comms));
    out.emplace_back("grid_community_sizes", join(sizes));
    out.emplace_back("grid_p_bets", join(grid.p_bets));
  }
  return out;
}

ResultTable run_scenario(const ExperimentConfig& config, int threads) {
  config.validate();
  require(threads >= 1, ErrorCode::kInvalidArgument,
          "thread count must be at least 1");

  const int units = unit_count(config);
  std::vector<Rows> slots(units);
  std::vector<std::string> errors(units);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int u = next++; u < units; u = next++) {
      try {
        slots[u] = run_unit(config, u);
      } catch (const std::exception& e) {
        errors[u] = e.what();
        if (errors[u].empty()) errors[u] = "unknown error";
      }
    }
  };
  const int pool_size = std::min(threads, std::max(units, 1));
  if (pool_size == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(pool_size);
    for (int i = 0; i < pool_size; ++i) pool.emplace_back(worker);
  }

  ResultTable table;
  table.columns = columns_for(config);
  for (int u = 0; u < units; ++u) {
    if (!errors[u].empty()) {
      ++table.failed_realizations;
      std::clog << "qnet: " << scenario_name(config.scenario)
                << " realization " << u << " failed: " << errors[u] << '\n';
      continue;
    }
    for (EnsembleRecord& r : slots[u]) table.records.push_back(std::move(r));
  }
  table.config = config.echo();
  table.config.emplace_back("failed_realizations",
                            std::to_string(table.failed_realizations));
  return table;
}

}  // namespace qnet
