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

#include "dcpa/cli.h"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "dcpa/harness.h"
#include "dcpa/solvers.h"
#include "dcpa/topology.h"

namespace dcpa {

namespace {

void PrintSummary(std::ostream& out, const ExperimentResult& result) {
  out << std::setw(4) << "K";
  for (Algorithm a : result.algorithms) {
    out << std::setw(14) << AlgorithmName(a);
  }
  out << std::setw(12) << "ratio" << '\n';
  for (const SummaryRow& row : result.summary) {
    out << std::setw(4) << row.k_ues;
    for (const AlgorithmSummary& s : row.per_algorithm) {
      out << std::setw(14) << std::setprecision(5) << s.mean_sum_rate / 1e6;
    }
    if (row.mean_ratio) {
      out << std::setw(12) << std::setprecision(6) << *row.mean_ratio;
    }
    out << '\n';
  }
  out << "(mean sum-rate in Mbit/s)\n";
}

void RunAndEmit(std::ostream& out, const ExperimentConfig& cfg) {
  const ExperimentResult result = RunExperiment(cfg);
  EmitCsv(result, cfg.output_path);
  PrintSummary(out, result);
  out << "wrote " << cfg.output_path << " and " << cfg.output_path
      << ".summary.csv\n";
}

ScenarioParams ReferenceScenario(int num_sbs, int num_ue, std::uint64_t seed) {
  ScenarioParams params;
  params.num_sbs = num_sbs;
  params.num_ue = num_ue;
  params.seed = seed;
  return params;
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Dual-connectivity profile allocation simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  bool override_cap = false;
  int threads = 0;
  CLI::App* run = app.add_subcommand("run", "Run an experiment from a config");
  run->add_option("--config", config_path, "key = value config file")
      ->required();
  run->add_option("--out", out_path, "CSV output path (overrides config)");
  run->add_flag("--override-cap", override_cap,
                "Allow the exhaustive oracle above its K cap");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");

  std::uint64_t seed = 1;
  int num_ue = 8;
  int num_sbs = 4;
  int trials = 50;
  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "Check the best-UE optimality condition on seeded instances");
  oracle->add_option("--seed", seed, "Master seed");
  oracle->add_option("--k", num_ue, "Number of UEs")->required();
  oracle->add_option("--i", num_sbs, "Number of SBSs")->required();
  oracle->add_option("--trials", trials, "Number of instances");

  std::string out_dir = ".";
  int sweep_trials = 200;
  std::uint64_t sweep_seed = 1;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Optimality-gap, capacity and complexity runs at reference parameters");
  sweep->add_option("--out-dir", out_dir, "Directory for the CSV files");
  sweep->add_option("--seed", sweep_seed, "Master seed");
  sweep->add_option("--trials", sweep_trials, "Trials per K");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  std::uint64_t table_seed = 1;
  int table_k = 10;
  int table_i = 4;
  std::string table_out;
  CLI::App* table_cmd = app.add_subcommand(
      "channel-table", "Print the channel table of one seeded instance");
  table_cmd->add_option("--seed", table_seed, "Instance seed");
  table_cmd->add_option("--k", table_k, "Number of UEs");
  table_cmd->add_option("--i", table_i, "Number of SBSs");
  table_cmd->add_option("--out", table_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*run) {
      ExperimentConfig cfg = LoadConfig(config_path);
      if (!out_path.empty()) cfg.output_path = out_path;
      if (cfg.output_path.empty()) cfg.output_path = "results.csv";
      cfg.override_cap = cfg.override_cap || override_cap;
      if (threads > 0) cfg.threads = threads;
      RunAndEmit(out, cfg);
      return 0;
    }

    if (*oracle) {
      if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
      int passed = 0;
      for (int t = 0; t < trials; ++t) {
        const ScenarioParams params =
            ReferenceScenario(num_sbs, num_ue, ChildSeed(seed, num_ue, t));
        const ChannelTable table =
            BuildChannelTable(GenerateTopology(params), params);
        RateCounter counter;
        const SolverResult opt = SolveBruteForce(table, counter);
        const Proposition1Check check = CheckProposition1(table, opt.alloc);
        if (check.holds) {
          ++passed;
        } else {
          out << "trial " << t << " FAIL: " << check.witness << '\n';
        }
      }
      out << passed << '/' << trials << " pass\n";
      return passed == trials ? 0 : 1;
    }

    if (*sweep) {
      if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
      const SweepPlan plan =
          MakeSweepPlan(sweep_seed, sweep_trials, out_dir, threads);
      out << "== optimality gap (with exhaustive oracle)\n";
      RunAndEmit(out, plan.gap);
      out << "== capacity and complexity (oracle count analytic)\n";
      RunAndEmit(out, plan.capacity);
      return 0;
    }

    if (*table_cmd) {
      const ScenarioParams params =
          ReferenceScenario(table_i, table_k, table_seed);
      const Topology topo = GenerateTopology(params);
      const ChannelTable table = BuildChannelTable(topo, params);
      if (table_out.empty()) {
        WriteChannelTable(out, topo, table);
      } else {
        std::ofstream f(table_out);
        if (!f) throw std::runtime_error("cannot write " + table_out);
        WriteChannelTable(f, topo, table);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace dcpa
