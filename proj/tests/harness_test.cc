// Copyright 2026 The Authors.
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

#include "dcpa/harness.h"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dcpa/cli.h"

namespace dcpa {
namespace {

ExperimentConfig SmallConfig() {
  ExperimentConfig cfg;
  cfg.ue_sweep = {1, 3, 5};
  cfg.algorithms.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
  cfg.trials = 4;
  cfg.master_seed = 42;
  cfg.threads = 2;
  return cfg;
}

std::string RecordsCsv(const ExperimentResult& r) {
  std::ostringstream os;
  WriteRecordsCsv(os, r.algorithms, r.records);
  return os.str();
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dcpa_harness_" + name);
}

int RunCli(std::vector<std::string> args, std::string* out_text = nullptr,
           std::string* err_text = nullptr) {
  args.insert(args.begin(), "dcpa_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      CliMain(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

TEST_CASE("config parsing") {
  std::istringstream in(R"(
# comment
area_side_m = 400   # trailing comment
num_sbs = 3
ue_sweep = 1, 4..6, 9
algorithms = stronger, proposed
trials = 7
master_seed = 18446744073709551615
output_path = out/x.csv
override_cap = true
)");
  const ExperimentConfig cfg = ParseConfig(in);
  CHECK(cfg.scenario.area_side_m == 400);
  CHECK(cfg.scenario.num_sbs == 3);
  CHECK(cfg.scenario.p_macro_dbm == 46);
  CHECK(cfg.ue_sweep == std::vector<int>{1, 4, 5, 6, 9});
  CHECK(cfg.algorithms ==
        std::vector<Algorithm>{Algorithm::kProposed, Algorithm::kStronger});
  CHECK(cfg.trials == 7);
  CHECK(cfg.master_seed == 18446744073709551615ULL);
  CHECK(cfg.output_path == "out/x.csv");
  CHECK(cfg.override_cap);
}

TEST_CASE("config errors name the line") {
  std::istringstream unknown("trials = 3\nbogus = 1\n");
  CHECK_THROWS_WITH_AS(ParseConfig(unknown), doctest::Contains("line 2"),
                       std::invalid_argument);
  std::istringstream bad_number("trials = three\n");
  CHECK_THROWS_AS(ParseConfig(bad_number), std::invalid_argument);
  std::istringstream bad_alg("algorithms = optimal, greedy\n");
  CHECK_THROWS_AS(ParseConfig(bad_alg), std::invalid_argument);
  std::istringstream no_eq("trials 3\n");
  CHECK_THROWS_AS(ParseConfig(no_eq), std::invalid_argument);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = SmallConfig();
  CHECK_NOTHROW(cfg.Validate());
  cfg.ue_sweep = {20};
  CHECK_THROWS_WITH_AS(cfg.Validate(), doctest::Contains("cap"),
                       std::invalid_argument);
  cfg.override_cap = true;
  CHECK_NOTHROW(cfg.Validate());
  cfg = SmallConfig();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.Validate(), std::invalid_argument);
  cfg = SmallConfig();
  cfg.ue_sweep.clear();
  CHECK_THROWS_AS(cfg.Validate(), std::invalid_argument);
}

TEST_CASE("child seeds depend only on position") {
  CHECK(ChildSeed(1, 4, 0) == ChildSeed(1, 4, 0));
  CHECK(ChildSeed(1, 4, 0) != ChildSeed(1, 4, 1));
  CHECK(ChildSeed(1, 4, 0) != ChildSeed(1, 5, 0));
  CHECK(ChildSeed(1, 4, 0) != ChildSeed(2, 4, 0));
}

TEST_CASE("single-trial experiment with every algorithm") {
  ExperimentConfig cfg = SmallConfig();
  cfg.ue_sweep = {1};
  cfg.trials = 1;
  const ExperimentResult r = RunExperiment(cfg);
  REQUIRE(r.records.size() == 1);
  REQUIRE(r.records[0].outcomes.size() == 5);
  const double optimal = r.records[0].outcomes[0].sum_rate;
  for (const auto& o : r.records[0].outcomes) {
    CHECK(o.sum_rate > 0);
    CHECK(o.sum_rate <= optimal);
  }
  REQUIRE(r.records[0].ratio_proposed_optimal.has_value());
  CHECK(r.summary.size() == 1);
}

TEST_CASE("experiment records are ordered, bounded and positional") {
  const ExperimentConfig cfg = SmallConfig();
  const ExperimentResult r = RunExperiment(cfg);
  REQUIRE(r.records.size() == 12);
  std::size_t j = 0;
  for (int k : cfg.ue_sweep) {
    for (int t = 0; t < cfg.trials; ++t, ++j) {
      CHECK(r.records[j].k_ues == k);
      CHECK(r.records[j].trial == t);
      CHECK(r.records[j].seed == ChildSeed(cfg.master_seed, k, t));
      REQUIRE(r.records[j].ratio_proposed_optimal.has_value());
      CHECK(*r.records[j].ratio_proposed_optimal > 0);
      CHECK(*r.records[j].ratio_proposed_optimal <= 1);
    }
  }
  // Any trial recomputed alone, in any order, gives the same record.
  CHECK(RunTrial(cfg, 5, 3) == r.records[11]);
  CHECK(RunTrial(cfg, 1, 0) == r.records[0]);

  REQUIRE(r.summary.size() == 3);
  CHECK(r.summary[2].k_ues == 5);
  CHECK(r.summary[2].trials == 4);
  CHECK(r.summary[2].optimal_op_count_analytic == 5 * 243);
  CHECK(r.summary[2].per_algorithm[0].median_op_count == 5 * 243);
}

TEST_CASE("thread count does not change the output") {
  ExperimentConfig cfg = SmallConfig();
  cfg.threads = 1;
  const std::string serial = RecordsCsv(RunExperiment(cfg));
  cfg.threads = 3;
  CHECK(RecordsCsv(RunExperiment(cfg)) == serial);
}

TEST_CASE("CSV layout") {
  const std::vector<Algorithm> algs = {Algorithm::kOptimal,
                                       Algorithm::kProposed};
  std::ostringstream empty;
  WriteRecordsCsv(empty, algs, {});
  CHECK(empty.str() ==
        "k_ues,trial,seed,optimal_sumrate,optimal_opcount,proposed_sumrate,"
        "proposed_opcount,ratio_proposed_optimal\n");

  TrialRecord rec;
  rec.k_ues = 3;
  rec.trial = 1;
  rec.seed = 9;
  rec.outcomes = {{2.5, 81}, {2.0, 7}};
  rec.ratio_proposed_optimal = 0.8;
  std::ostringstream one;
  WriteRecordsCsv(one, algs, {rec});
  const std::string text = one.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.substr(text.find('\n') + 1) == "3,1,9,2.5,81,2,7,0.8\n");

  rec.ratio_proposed_optimal.reset();
  std::ostringstream no_ratio;
  WriteRecordsCsv(no_ratio, algs, {rec});
  CHECK(no_ratio.str().substr(no_ratio.str().find('\n') + 1) ==
        "3,1,9,2.5,81,2,7,\n");
}

TEST_CASE("CSV parse-back reproduces records bit-exactly") {
  const ExperimentResult r = RunExperiment(SmallConfig());
  std::stringstream ss(RecordsCsv(r));
  std::vector<Algorithm> algs;
  const std::vector<TrialRecord> back = ReadRecordsCsv(ss, &algs);
  CHECK(algs == r.algorithms);
  CHECK(back == r.records);

  ExperimentConfig cfg = SmallConfig();
  cfg.algorithms = {Algorithm::k1aOnly};
  const ExperimentResult partial = RunExperiment(cfg);
  std::stringstream ss2(RecordsCsv(partial));
  CHECK(ReadRecordsCsv(ss2, nullptr) == partial.records);
}

TEST_CASE("EmitCsv writes records and summary") {
  const auto path = TempPath("emit.csv");
  const ExperimentResult r = RunExperiment(SmallConfig());
  EmitCsv(r, path.string());
  std::ifstream records(path);
  std::vector<Algorithm> algs;
  CHECK(ReadRecordsCsv(records, &algs) == r.records);
  std::ifstream summary(path.string() + ".summary.csv");
  std::string header;
  std::getline(summary, header);
  CHECK(header.rfind("k_ues,trials,optimal_mean_sumrate", 0) == 0);
  int lines = 0;
  for (std::string l; std::getline(summary, l);) ++lines;
  CHECK(lines == 3);
}

TEST_CASE("unwritable output path fails before running") {
  ExperimentConfig cfg = SmallConfig();
  cfg.output_path = "/nonexistent_dir_dcpa/x.csv";
  CHECK_THROWS_AS(RunExperiment(cfg), std::runtime_error);
}

TEST_CASE("identical configs give byte-identical CSV") {
  ExperimentConfig cfg = SmallConfig();
  cfg.ue_sweep = {4, 8};
  cfg.trials = 10;
  CHECK(RecordsCsv(RunExperiment(cfg)) == RecordsCsv(RunExperiment(cfg)));
}

TEST_CASE("sweep plan") {
  const SweepPlan plan = MakeSweepPlan(3, 200, "out", 0);
  CHECK(plan.gap.ue_sweep.front() == 4);
  CHECK(plan.gap.ue_sweep.back() == 12);
  CHECK(plan.gap.Enabled(Algorithm::kOptimal));
  CHECK(plan.capacity.ue_sweep.back() == 20);
  CHECK_FALSE(plan.capacity.Enabled(Algorithm::kOptimal));
  CHECK(plan.gap.output_path == "out/gap.csv");
  CHECK_NOTHROW(plan.gap.Validate());
  CHECK_NOTHROW(plan.capacity.Validate());
}

TEST_CASE("cli: run on the bundled default config") {
  const auto out = TempPath("cli_run.csv");
  std::string text;
  const int code = RunCli({"run", "--config",
                           std::string(DCPA_SOURCE_DIR) + "/configs/default.conf",
                           "--out", out.string()},
                          &text);
  CHECK(code == 0);
  CHECK(std::filesystem::exists(out));
  CHECK(std::filesystem::exists(out.string() + ".summary.csv"));
  std::ifstream in(out);
  CHECK(ReadRecordsCsv(in, nullptr).size() == 7 * 50);
}

TEST_CASE("cli: errors give nonzero exit codes") {
  std::string out, err;
  CHECK(RunCli({"run", "--config", "x.conf", "--bogus"}, &out, &err) != 0);
  CHECK(err.find("--bogus") != std::string::npos);
  CHECK(RunCli({}, &out, &err) != 0);
  CHECK(RunCli({"run", "--config", "/no/such/file.conf"}, &out, &err) == 1);
  CHECK(err.find("cannot open") != std::string::npos);
}

TEST_CASE("cli: oracle-check") {
  std::string out;
  CHECK(RunCli({"oracle-check", "--k", "8", "--i", "4", "--trials", "50"},
               &out) == 0);
  CHECK(out.find("50/50 pass") != std::string::npos);
}

TEST_CASE("cli: channel-table") {
  std::string out;
  CHECK(RunCli({"channel-table", "--seed", "3", "--k", "5", "--i", "4"},
               &out) == 0);
  std::istringstream in(out);
  CHECK(ReadChannelTable(in).size() == 5);
}

}  // namespace
}  // namespace dcpa
