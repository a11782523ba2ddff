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

#include "dcpa/solvers.h"

namespace dcpa {

namespace {

SolverResult EvaluateFixed(Allocation alloc, const ChannelTable& table,
                           RateCounter& counter) {
  SolverResult result;
  result.alloc = std::move(alloc);
  result.report = Evaluate(result.alloc, table, counter);
  return result;
}

}  // namespace

SolverResult Solve3cOnly(const ChannelTable& table, RateCounter& counter) {
  return EvaluateFixed(Allocation::Uniform(table.num_ue(), Profile::kDual),
                       table, counter);
}

SolverResult Solve1aOnly(const ChannelTable& table, RateCounter& counter) {
  return EvaluateFixed(
      Allocation::Uniform(table.num_ue(), Profile::kSmallOnly), table,
      counter);
}

SolverResult SolveStronger(const ChannelTable& table, RateCounter& counter) {
  Allocation alloc = Allocation::Uniform(table.num_ue(), Profile::kMacroOnly);
  for (int k = 0; k < table.num_ue(); ++k) {
    if (table.rx_macro_w[k] < table.rx_small_w[k]) {
      alloc.Set(k, Profile::kSmallOnly);
    }
  }
  return EvaluateFixed(std::move(alloc), table, counter);
}

}  // namespace dcpa
