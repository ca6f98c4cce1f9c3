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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qnet/topology.hpp"

namespace qnet {

enum class Scenario {
  kFig2,   // sorted mode shifts: internal vs inter-community link loss
  kFig3,   // fidelity vs shift under inter-community loss and compensation
  kFig4,   // lost-link community identification over a parameter grid
  kFig5,   // detuning signatures: couplings, center-of-mass shift, estimate
  kFig5c,  // transfer fidelity per mode under detuning
  kFig6,   // counter-detuning compensation
  kFig7,   // entanglement transfer
  kAppA,   // rings and paths vs modular networks
};

std::string_view scenario_name(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
std::vector<Scenario> all_scenarios();

struct DetectionGrid {
  std::vector<int> communities{4};
  std::vector<int> community_sizes{6, 10, 14};
  std::vector<double> p_bets{0.025, 0.05, 0.1};
};

struct ExperimentConfig {
  Scenario scenario = Scenario::kFig2;
  SbmParams sbm;
  double omega0 = 1.0;
  double coupling = 1.0;
  int c = 50;
  double squeezing = 1.0;
  std::vector<double> detunings;
  int ensemble = 100;
  std::uint64_t seed = 1;
  int window_samples = 200;
  double window_periods = 1.0;
  int pairs_per_cell = 5;
  int detuned_community = 1;
  bool exclude_defective = true;
  DetectionGrid grid;

  // Scenario-specific defaults (ensemble size, detuning list).
  static ExperimentConfig defaults(Scenario s);

  void validate() const;

  // Ordered key/value echo embedded in every output file.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

using Value = std::variant<std::int64_t, double, std::string>;

struct EnsembleRecord {
  std::vector<Value> values;  // aligned with ResultTable::columns
};

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<EnsembleRecord> records;
  int failed_realizations = 0;
};

// Realizations run on `threads` workers; output does not depend on it.
ResultTable run_scenario(const ExperimentConfig& config, int threads = 1);

enum class OutputFormat { kCsv, kJson };

std::string format_value(const Value& v);
Value parse_value(std::string_view text);

void write_results(const ResultTable& table, OutputFormat format,
                   std::ostream& out);
void write_results(const ResultTable& table, OutputFormat format,
                   const std::filesystem::path& path);

ResultTable read_csv(std::istream& in);

}  // namespace qnet
