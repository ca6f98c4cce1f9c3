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

// Experiment runner. Talks to the library only through the C interface.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnet/qnet.h"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRunError = 1;

struct Handle {
  qnet_experiment* ptr = nullptr;
  ~Handle() { qnet_experiment_free(ptr); }
};

bool check(qnet_status status, const char* what) {
  if (status == QNET_OK) return true;
  std::cerr << "qnet-run: " << what << ": " << qnet_last_error() << '\n';
  return false;
}

std::vector<double> to_doubles(const std::vector<int>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run seeded state-transfer ensembles on noisy modular networks"};

  std::string scenario;
  std::uint64_t seed = 1;
  std::optional<int> ensemble, communities, community_size, c, window_samples,
      pairs_per_cell, detuned_community;
  std::optional<double> p_int, p_bet, squeezing, coupling, window_periods;
  std::vector<double> detunings, grid_p_bets;
  std::vector<int> grid_communities, grid_sizes;
  std::string format = "csv";
  std::string out_path;
  int threads = 1;
  bool allow_defective_hit = false;

  app.add_option("--scenario", scenario,
                 "fig2 | fig3 | fig4 | fig5 | fig5c | fig6 | fig7 | appA")
      ->required();
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--ensemble", ensemble, "Realizations (per grid cell for fig4)")
      ->check(CLI::PositiveNumber);
  app.add_option("--communities", communities, "Number of communities N");
  app.add_option("--community-size", community_size, "Nodes per community");
  app.add_option("--p-int", p_int, "Intra-community link probability")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--p-bet", p_bet, "Inter-community link probability")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--c", c, "Transfer-time parameter c")
      ->check(CLI::PositiveNumber);
  app.add_option("--squeezing", squeezing, "Squeezing r of the sent state");
  app.add_option("--detuning", detunings, "Detuning list, e.g. -0.3,-0.2")
      ->delimiter(',');
  app.add_option("--window-samples", window_samples,
                 "Samples in the fidelity window (1 = t_ideal only)");
  app.add_option("--window-periods", window_periods,
                 "Window width in resonant periods");
  app.add_option("--coupling", coupling, "Network spring coupling g");
  app.add_option("--pairs-per-cell", pairs_per_cell,
                 "Sender/receiver draws per community cell");
  app.add_option("--detuned-community", detuned_community,
                 "Community holding the detuned oscillator");
  app.add_flag("--allow-defective-hit", allow_defective_hit,
               "Let counter-detuning pick the defective node itself");
  app.add_option("--grid-communities", grid_communities, "fig4 N values")
      ->delimiter(',');
  app.add_option("--grid-community-sizes", grid_sizes, "fig4 n_c values")
      ->delimiter(',');
  app.add_option("--grid-p-bet", grid_p_bets, "fig4 p_bet values")
      ->delimiter(',');
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "Output file")->required();
  app.add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  Handle exp;
  if (!check(qnet_experiment_create(scenario.c_str(), &exp.ptr), "scenario")) {
    return kExitConfigError;
  }

  bool ok = check(qnet_experiment_set_int(exp.ptr, "seed",
                                          static_cast<int64_t>(seed)),
                  "--seed");
  auto set_int = [&](const char* key, const std::optional<int>& v) {
    if (v) ok = ok && check(qnet_experiment_set_int(exp.ptr, key, *v), key);
  };
  auto set_double = [&](const char* key, const std::optional<double>& v) {
    if (v) ok = ok && check(qnet_experiment_set_double(exp.ptr, key, *v), key);
  };
  auto set_list = [&](const char* key, const std::vector<double>& v) {
    if (!v.empty()) {
      ok = ok &&
           check(qnet_experiment_set_list(exp.ptr, key, v.data(), v.size()),
                 key);
    }
  };
  set_int("ensemble", ensemble);
  set_int("communities", communities);
  set_int("community_size", community_size);
  set_int("c", c);
  set_int("window_samples", window_samples);
  set_int("pairs_per_cell", pairs_per_cell);
  set_int("detuned_community", detuned_community);
  if (allow_defective_hit) set_int("exclude_defective", 0);
  set_double("p_int", p_int);
  set_double("p_bet", p_bet);
  set_double("squeezing", squeezing);
  set_double("coupling", coupling);
  set_double("window_periods", window_periods);
  set_list("detunings", detunings);
  set_list("grid_p_bets", grid_p_bets);
  set_list("grid_communities", to_doubles(grid_communities));
  set_list("grid_community_sizes", to_doubles(grid_sizes));
  if (!ok || !check(qnet_experiment_validate(exp.ptr), "config")) {
    return kExitConfigError;
  }

  if (!check(qnet_experiment_run(exp.ptr, threads), "run")) {
    return kExitRunError;
  }
  if (!check(qnet_experiment_write(exp.ptr, format.c_str(), out_path.c_str()),
             "write")) {
    return kExitRunError;
  }
  std::cerr << "qnet-run: " << scenario << ": "
            << qnet_experiment_row_count(exp.ptr) << " rows, "
            << qnet_experiment_failed_count(exp.ptr)
            << " failed realizations -> " << out_path << '\n';
  return 0;
}
