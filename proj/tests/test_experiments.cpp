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

#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "qnet/error.hpp"
#include "qnet/experiments.hpp"

namespace qnet {
namespace {

// Small, fast configuration of a scenario.
ExperimentConfig small(Scenario s, int ensemble = 2) {
  ExperimentConfig cfg = ExperimentConfig::defaults(s);
  cfg.ensemble = ensemble;
  cfg.window_samples = 8;
  cfg.pairs_per_cell = 1;
  cfg.seed = 99;
  return cfg;
}

std::size_t column(const ResultTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

double num(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

std::string str(const Value& v) { return std::get<std::string>(v); }

std::string to_csv(const ResultTable& t) {
  std::ostringstream out;
  write_results(t, OutputFormat::kCsv, out);
  return out.str();
}

TEST(Scenario, NamesRoundTrip) {
  const auto all = all_scenarios();
  EXPECT_EQ(all.size(), 8u);
  for (Scenario s : all) EXPECT_EQ(parse_scenario(scenario_name(s)), s);
  EXPECT_EQ(parse_scenario("fig5c"), Scenario::kFig5c);
  EXPECT_EQ(parse_scenario("appA"), Scenario::kAppA);
  EXPECT_FALSE(parse_scenario("fig9").has_value());
}

TEST(Config, DefaultsPerScenario) {
  EXPECT_EQ(ExperimentConfig::defaults(Scenario::kFig4).ensemble, 200);
  EXPECT_EQ(ExperimentConfig::defaults(Scenario::kFig3).ensemble, 20);
  EXPECT_EQ(ExperimentConfig::defaults(Scenario::kFig5).detunings.size(), 7u);
  const ExperimentConfig cfg = ExperimentConfig::defaults(Scenario::kFig2);
  EXPECT_EQ(cfg.sbm.communities, 4);
  EXPECT_EQ(cfg.sbm.community_size, 10);
  EXPECT_DOUBLE_EQ(cfg.sbm.p_int, 0.75);
  EXPECT_DOUBLE_EQ(cfg.sbm.p_bet, 0.025);
  EXPECT_EQ(cfg.c, 50);
  EXPECT_DOUBLE_EQ(cfg.squeezing, 1.0);
  EXPECT_EQ(cfg.window_samples, 200);
}

TEST(Config, ValidationRejectsBadValues) {
  ExperimentConfig cfg = small(Scenario::kFig5);
  cfg.ensemble = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small(Scenario::kFig5);
  cfg.detunings.clear();
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small(Scenario::kFig5);
  cfg.detunings = {-1.0};
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small(Scenario::kFig2);
  cfg.sbm.p_int = 1.5;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small(Scenario::kFig4);
  cfg.grid.p_bets.clear();
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small(Scenario::kFig6);
  cfg.detuned_community = 4;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_THROW(run_scenario(small(Scenario::kFig2), 0), Error);
}

TEST(Config, EchoListsParametersButNotThreads) {
  const ResultTable t = run_scenario(small(Scenario::kAppA, 1), 2);
  std::map<std::string, std::string> kv(t.config.begin(), t.config.end());
  EXPECT_EQ(kv.at("scenario"), "appA");
  EXPECT_EQ(kv.at("seed"), "99");
  EXPECT_EQ(kv.at("p_bet"), "0.025");
  EXPECT_EQ(kv.at("failed_realizations"), "0");
  EXPECT_EQ(kv.count("threads"), 0u);
}

TEST(Run, Fig2ShiftsAreSortedAndNonPositive) {
  const ResultTable t = run_scenario(small(Scenario::kFig2, 3));
  ASSERT_EQ(t.failed_realizations, 0);
  ASSERT_EQ(t.records.size(), 3u * 4u * 3u);
  const std::size_t shift = column(t, "relative_shift");
  const std::size_t rank = column(t, "rank");
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const double s = num(t.records[i].values[shift]);
    EXPECT_LE(s, 1e-12);
    if (num(t.records[i].values[rank]) > 0) {
      EXPECT_LE(std::abs(s), std::abs(num(t.records[i - 1].values[shift])));
    }
  }
}

TEST(Run, Fig3CasesAndModes) {
  const ResultTable t = run_scenario(small(Scenario::kFig3, 1));
  ASSERT_EQ(t.failed_realizations, 0);
  ASSERT_EQ(t.records.size(), 16u);
  const std::size_t kase = column(t, "case");
  const std::size_t mode = column(t, "mode");
  const std::size_t shift = column(t, "relative_shift");
  for (const auto& r : t.records) {
    if (str(r.values[kase]) == "lossless") EXPECT_EQ(num(r.values[shift]), 0.0);
    if (num(r.values[mode]) == 0) EXPECT_NEAR(num(r.values[shift]), 0.0, 1e-10);
    for (const char* c : {"best", "top2", "mean", "mean_at_t_ideal"}) {
      const double f = num(r.values[column(t, c)]);
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
    }
  }
}

TEST(Run, Fig4GridRows) {
  ExperimentConfig cfg = small(Scenario::kFig4, 3);
  cfg.grid.community_sizes = {6};
  cfg.grid.p_bets = {0.05, 0.1};
  const ResultTable t = run_scenario(cfg);
  EXPECT_EQ(t.records.size() + static_cast<std::size_t>(t.failed_realizations), 6u);
  for (const auto& r : t.records) {
    EXPECT_EQ(num(r.values[column(t, "communities")]), 4);
    EXPECT_NEAR(num(r.values[column(t, "baseline")]), 1.0 / 6.0, 1e-15);
    const double hit = num(r.values[column(t, "hit")]);
    EXPECT_TRUE(hit == 0 || hit == 1);
    EXPECT_EQ(hit == 1, str(r.values[column(t, "true_pair")]) ==
                            str(r.values[column(t, "detected_pair")]));
  }
}

TEST(Run, Fig5ZeroDetuningIsClean) {
  ExperimentConfig cfg = small(Scenario::kFig5, 2);
  const ResultTable t = run_scenario(cfg);
  ASSERT_EQ(t.records.size(), 2u * cfg.detunings.size());
  ASSERT_EQ(t.columns.back(), "coupling_3");
  for (const auto& r : t.records) {
    EXPECT_EQ(num(r.values[column(t, "true_community")]), 1);
    const double dw = num(r.values[column(t, "delta_omega")]);
    const double shift = num(r.values[column(t, "omega0_shift")]);
    if (dw == 0.0) {
      EXPECT_NEAR(shift, 0.0, 1e-12);
      EXPECT_NEAR(num(r.values[column(t, "estimated_omega")]), 1.0, 1e-9);
    } else {
      EXPECT_GT(shift * dw, 0.0);
    }
  }
}

TEST(Run, DetuningScenariosProduceAllRows) {
  const ResultTable c = run_scenario(small(Scenario::kFig5c, 1));
  EXPECT_EQ(c.records.size(), 4u * 4u);
  const ResultTable six = run_scenario(small(Scenario::kFig6, 1));
  EXPECT_EQ(six.records.size(), 3u * 3u * 4u);
  for (const auto& r : six.records) {
    if (str(r.values[column(six, "case")]) == "compensated") {
      EXPECT_NE(num(r.values[column(six, "compensating_node")]), -1);
    }
  }
}

TEST(Run, Fig7FractionsInRange) {
  const ResultTable t = run_scenario(small(Scenario::kFig7, 1));
  // cases: noiseless, link_loss, two detunings; 4 modes; one pair each
  ASSERT_EQ(t.records.size() + 16u * static_cast<std::size_t>(t.failed_realizations), 16u);
  for (const auto& r : t.records) {
    const double f = num(r.values[column(t, "en_fraction")]);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-6);
    EXPECT_NE(num(r.values[column(t, "sender")]), num(r.values[column(t, "receiver")]));
  }
}

TEST(Run, AppendixChainsVersusModularNetworks) {
  const ResultTable t = run_scenario(small(Scenario::kAppA, 2));
  ASSERT_EQ(t.records.size(), 6u);
  for (const auto& r : t.records) {
    const std::string net = str(r.values[column(t, "network")]);
    const double wmax = num(r.values[column(t, "max_frequency")]);
    if (net == "ring") {
      EXPECT_NEAR(wmax, std::sqrt(5.0), 1e-9);
      EXPECT_EQ(num(r.values[column(t, "connected_after_one")]), 1);
      EXPECT_EQ(num(r.values[column(t, "connected_after_two")]), 0);
    } else if (net == "path") {
      EXPECT_LE(wmax, std::sqrt(5.0));
      EXPECT_EQ(num(r.values[column(t, "connected_after_one")]), 0);
      EXPECT_TRUE(std::isnan(num(r.values[column(t, "max_shift_after_one")])));
    }
  }
}

TEST(Determinism, ThreadCountDoesNotChangeOutput) {
  for (Scenario s : {Scenario::kFig2, Scenario::kFig5, Scenario::kFig3}) {
    const ExperimentConfig cfg = small(s, s == Scenario::kFig3 ? 2 : 6);
    EXPECT_EQ(to_csv(run_scenario(cfg, 1)), to_csv(run_scenario(cfg, 8)));
  }
}

TEST(Determinism, SeedChangesOutput) {
  ExperimentConfig a = small(Scenario::kFig2, 3);
  ExperimentConfig b = a;
  b.seed = 100;
  EXPECT_NE(to_csv(run_scenario(a)), to_csv(run_scenario(b)));
}

TEST(ResultsIo, FormatValue) {
  EXPECT_EQ(format_value(Value{std::int64_t{3}}), "3");
  EXPECT_EQ(format_value(Value{1.0}), "1.0");
  EXPECT_EQ(format_value(Value{0.1}), "0.1");
  EXPECT_EQ(format_value(Value{-2.5e-12}), "-2.5e-12");
  EXPECT_EQ(format_value(Value{std::nan("")}), "nan");
  EXPECT_EQ(format_value(Value{std::string("inter")}), "inter");
}

TEST(ResultsIo, ParseValue) {
  EXPECT_EQ(parse_value("42"), Value{std::int64_t{42}});
  EXPECT_EQ(parse_value("1.0"), Value{1.0});
  EXPECT_EQ(parse_value("0-1"), Value{std::string("0-1")});
  EXPECT_EQ(parse_value(""), Value{std::string()});
  EXPECT_TRUE(std::isnan(std::get<double>(parse_value("nan"))));
}

TEST(ResultsIo, CsvRoundTrip) {
  ExperimentConfig cfg = small(Scenario::kFig5, 2);
  cfg.detunings = {-0.9, 0.1};  // the first is outside the estimator domain
  const ResultTable t = run_scenario(cfg);
  std::istringstream in(to_csv(t));
  const ResultTable back = read_csv(in);
  EXPECT_EQ(back.config, t.config);
  EXPECT_EQ(back.columns, t.columns);
  ASSERT_EQ(back.records.size(), t.records.size());
  bool saw_nan = false;
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      const Value& a = t.records[i].values[j];
      const Value& b = back.records[i].values[j];
      if (const auto* d = std::get_if<double>(&a); d && std::isnan(*d)) {
        saw_nan = true;
        EXPECT_TRUE(std::isnan(std::get<double>(b)));
      } else {
        EXPECT_EQ(a, b) << t.columns[j];
      }
    }
  }
  EXPECT_TRUE(saw_nan);
}

TEST(ResultsIo, EmptyTableIsHeaderOnly) {
  ResultTable t;
  t.config = {{"scenario", "fig2"}};
  t.columns = {"a", "b"};
  EXPECT_EQ(to_csv(t), "# scenario=fig2\na,b\n");
  std::istringstream in(to_csv(t));
  const ResultTable back = read_csv(in);
  EXPECT_EQ(back.columns, t.columns);
  EXPECT_TRUE(back.records.empty());
}

TEST(ResultsIo, JsonStructure) {
  ExperimentConfig cfg = small(Scenario::kFig5, 1);
  cfg.detunings = {-0.9, 0.0};
  const ResultTable t = run_scenario(cfg);
  std::ostringstream out;
  write_results(t, OutputFormat::kJson, out);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc.at("config").at("scenario"), "fig5");
  EXPECT_EQ(doc.at("columns").size(), t.columns.size());
  ASSERT_EQ(doc.at("records").size(), 2u);
  EXPECT_TRUE(doc.at("records")[0].at("estimated_omega").is_null());
  EXPECT_NEAR(doc.at("records")[1].at("estimated_omega").get<double>(), 1.0, 1e-9);
  EXPECT_EQ(doc.at("records")[1].at("realization").get<int>(), 0);
}

TEST(ResultsIo, RejectsUnwritableStringsAndMalformedCsv) {
  ResultTable t;
  t.columns = {"a"};
  t.records.push_back({{Value{std::string("x,y")}}});
  std::ostringstream out;
  EXPECT_THROW(write_results(t, OutputFormat::kCsv, out), Error);
  std::istringstream no_header("# k=v\n");
  EXPECT_THROW(read_csv(no_header), Error);
  std::istringstream ragged("a,b\n1\n");
  EXPECT_THROW(read_csv(ragged), Error);
}

}  // namespace
}  // namespace qnet
