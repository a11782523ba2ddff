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

// Allocation solvers: exhaustive search, the sorted-matrix greedy
// heuristic, three single-rule baselines, and a conformance check of the
// "every station serves its best UE" optimality condition.

#ifndef DCPA_SOLVERS_H_
#define DCPA_SOLVERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dcpa/allocation.h"
#include "dcpa/topology.h"

namespace dcpa {

struct SolverResult {
  Allocation alloc;
  // Objective of `alloc`. rate_calc_count is the solver's own work: the
  // final counter value of the run, not including this re-evaluation
  // (except for the baselines, whose only work is that evaluation).
  EvalReport report;
  std::string notes;
};

inline constexpr int kDefaultBruteForceCap = 14;

struct BruteForceOptions {
  int max_ue = kDefaultBruteForceCap;
  bool override_cap = false;
};

// K * 3^K, the exhaustive search's rate-calculation count.
std::int64_t BruteForceOpCount(int num_ue);

// Enumerates all 3^K profile vectors (profile order (1,1),(1,0),(0,1), UE 0
// the least significant digit) and keeps the first maximizer. Each
// candidate is charged K rate calculations, so the counter grows by
// exactly K * 3^K. Throws std::length_error above the cap unless
// overridden.
SolverResult SolveBruteForce(const ChannelTable& table, RateCounter& counter,
                             const BruteForceOptions& options = {});

// Column i < I lists the UEs associated with SBS i by descending SINR;
// column I lists every UE by descending macro SNR. Ties by ascending UE.
struct SortedMatrix {
  std::vector<std::vector<int>> columns;
};

SortedMatrix BuildSortedMatrix(const ChannelTable& table);

// Diagnostics of one greedy run.
struct ProposedTrace {
  // Number of search() commits after initialization.
  int iterations = 0;
  // Candidate subsets scored across all search() calls.
  std::int64_t candidate_subsets = 0;
  // Station chosen by each commit, in order.
  std::vector<int> committed_bs;
  bool used_fallback = false;
};

// Greedy admission over the sorted matrix. Each station starts with its
// column head; every search() then scores, for each station, the window
// between its cursors and commits the single (station, subset) with the
// smallest throughput degradation, until all UEs are served.
SolverResult SolveProposed(const ChannelTable& table, RateCounter& counter,
                           ProposedTrace* trace = nullptr);

// All UEs (1,1).
SolverResult Solve3cOnly(const ChannelTable& table, RateCounter& counter);
// All UEs (0,1).
SolverResult Solve1aOnly(const ChannelTable& table, RateCounter& counter);
// Each UE on the single tier with the larger received power, ties to the
// macro cell.
SolverResult SolveStronger(const ChannelTable& table, RateCounter& counter);

struct Proposition1Check {
  bool holds = true;
  // First station whose best UE no maximizer serves; -1 when holds.
  int violating_bs = -1;
  std::string witness;
};

// Scans every maximizer of the objective (relative tie tolerance 1e-12)
// and verifies that, for each station with a nonempty candidate pool,
// some maximizer serves that pool's best UE at that station. Also fails
// if `optimum` is beaten by another allocation. Intended for K <= ~10.
Proposition1Check CheckProposition1(const ChannelTable& table,
                                    const Allocation& optimum);

}  // namespace dcpa

#endif  // DCPA_SOLVERS_H_
