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

// Seeded Monte Carlo experiments over random two-tier instances: config
// loading, the trial driver, per-K summaries and CSV emission.

#ifndef DCPA_HARNESS_H_
#define DCPA_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcpa/solvers.h"
#include "dcpa/topology.h"

namespace dcpa {

enum class Algorithm { kOptimal, kProposed, k3cOnly, k1aOnly, kStronger };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kOptimal, Algorithm::kProposed, Algorithm::k3cOnly,
    Algorithm::k1aOnly, Algorithm::kStronger};

// "optimal", "proposed", "3c_only", "1a_only", "stronger".
const char* AlgorithmName(Algorithm a);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

struct ExperimentConfig {
  // num_ue and seed are overwritten per trial.
  ScenarioParams scenario;
  std::vector<int> ue_sweep;
  // Kept in canonical kAllAlgorithms order without duplicates.
  std::vector<Algorithm> algorithms;
  int trials = 200;
  std::uint64_t master_seed = 1;
  std::string output_path;
  int brute_force_cap = kDefaultBruteForceCap;
  bool override_cap = false;
  // 0 picks std::thread::hardware_concurrency().
  int threads = 0;

  bool Enabled(Algorithm a) const;
  // Throws std::invalid_argument.
  void Validate() const;
};

// Flat "key = value" lines; '#' starts a comment. Keys are the
// ExperimentConfig field names plus the ScenarioParams field names
// (area_side_m, num_sbs, p_macro_dbm, ...). ue_sweep accepts a comma list
// with optional inclusive ranges, e.g. "4..12" or "1,2,5..8". Throws
// std::invalid_argument with the line number on any error.
ExperimentConfig ParseConfig(std::istream& is);
ExperimentConfig LoadConfig(const std::string& path);

// Pure function of its arguments, so any trial can be recomputed alone.
std::uint64_t ChildSeed(std::uint64_t master_seed, int num_ue, int trial);

struct AlgorithmOutcome {
  double sum_rate = 0.0;
  std::int64_t op_count = 0;

  friend bool operator==(const AlgorithmOutcome&,
                         const AlgorithmOutcome&) = default;
};

struct TrialRecord {
  int k_ues = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  // Aligned with the experiment's algorithm list.
  std::vector<AlgorithmOutcome> outcomes;
  std::optional<double> ratio_proposed_optimal;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct AlgorithmSummary {
  double mean_sum_rate = 0.0;
  double std_sum_rate = 0.0;
  double geomean_op_count = 0.0;
  double median_op_count = 0.0;
  double p75_op_count = 0.0;
};

struct SummaryRow {
  int k_ues = 0;
  int trials = 0;
  std::vector<AlgorithmSummary> per_algorithm;
  std::optional<double> mean_ratio;
  std::optional<double> min_ratio;
  std::optional<double> max_ratio;
  // K * 3^K, reported whether or not the oracle ran.
  std::int64_t optimal_op_count_analytic = 0;
};

struct ExperimentResult {
  std::vector<Algorithm> algorithms;
  // Ordered by (K in sweep order, trial).
  std::vector<TrialRecord> records;
  std::vector<SummaryRow> summary;
};

TrialRecord RunTrial(const ExperimentConfig& cfg, int num_ue, int trial);

// Runs every (K, trial) pair, fanned across cfg.threads workers. If
// output_path is set it is checked for writability before any work.
ExperimentResult RunExperiment(const ExperimentConfig& cfg);

std::vector<SummaryRow> Summarize(const std::vector<Algorithm>& algorithms,
                                  const std::vector<TrialRecord>& records);

// Header "k_ues,trial,seed,<alg>_sumrate,<alg>_opcount,...,
// ratio_proposed_optimal", one line per record. Doubles are written in
// shortest round-trip form.
void WriteRecordsCsv(std::ostream& os, const std::vector<Algorithm>& algorithms,
                     const std::vector<TrialRecord>& records);
void WriteSummaryCsv(std::ostream& os, const std::vector<Algorithm>& algorithms,
                     const std::vector<SummaryRow>& summary);
// Parses what WriteRecordsCsv emits; the header fixes the algorithm list.
std::vector<TrialRecord> ReadRecordsCsv(std::istream& is,
                                        std::vector<Algorithm>* algorithms);

// Writes `path` and `path + ".summary.csv"`. Throws std::runtime_error if
// either cannot be written.
void EmitCsv(const ExperimentResult& result, const std::string& path);

// The two experiments behind the reproduction sweep: an optimality-gap
// run with the oracle (K = 4..12) and a capacity/complexity run without
// it (K = 1..20). Reference scenario parameters throughout.
struct SweepPlan {
  ExperimentConfig gap;
  ExperimentConfig capacity;
};
SweepPlan MakeSweepPlan(std::uint64_t master_seed, int trials,
                        const std::string& out_dir, int threads);

}  // namespace dcpa

#endif  // DCPA_HARNESS_H_
