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

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcpa/solvers.h"

namespace dcpa {

namespace {

// Above this many UEs between the cursors the power set is not enumerable.
constexpr int kMaxWindowUes = 30;

struct Station {
  // Sorted column of UE indices; empty for an SBS with no associated UE.
  const std::vector<int>* column = nullptr;
  // currentset, kept ascending.
  std::vector<int> members;
  // Cursor rows into *column.
  int current = 0;
  int next = 0;
};

struct Candidate {
  double degradation = 0.0;
  int bs = -1;
  // Ascending UE indices; always contains the unserved UE at row next.
  std::vector<int> subset;
};

bool Better(const Candidate& c, const Candidate& best) {
  if (best.bs < 0) return true;
  if (c.degradation != best.degradation) {
    return c.degradation < best.degradation;
  }
  if (c.bs != best.bs) return c.bs < best.bs;
  return std::lexicographical_compare(c.subset.begin(), c.subset.end(),
                                      best.subset.begin(), best.subset.end());
}

std::vector<int> Merge(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

SortedMatrix BuildSortedMatrix(const ChannelTable& table) {
  const int num_sbs = table.num_sbs();
  SortedMatrix matrix;
  matrix.columns.resize(num_sbs + 1);
  for (int k = 0; k < table.num_ue(); ++k) {
    matrix.columns[table.assoc_sbs[k]].push_back(k);
    matrix.columns[num_sbs].push_back(k);
  }
  // Columns are filled in ascending UE order; a stable sort keeps that
  // order among equal values.
  for (int i = 0; i < num_sbs; ++i) {
    std::stable_sort(matrix.columns[i].begin(), matrix.columns[i].end(),
                     [&](int a, int b) {
                       return table.sinr_small[a] > table.sinr_small[b];
                     });
  }
  std::stable_sort(
      matrix.columns[num_sbs].begin(), matrix.columns[num_sbs].end(),
      [&](int a, int b) { return table.snr_macro[a] > table.snr_macro[b]; });
  return matrix;
}

SolverResult SolveProposed(const ChannelTable& table, RateCounter& counter,
                           ProposedTrace* trace) {
  const int num_ue = table.num_ue();
  if (num_ue < 1) throw std::invalid_argument("proposed solver needs K >= 1");
  const int num_bs = table.num_sbs() + 1;
  const SortedMatrix matrix = BuildSortedMatrix(table);

  ProposedTrace local_trace;
  ProposedTrace& tr = trace ? *trace : local_trace;
  tr = ProposedTrace{};

  std::vector<bool> served(num_ue, false);
  int served_count = 0;
  auto serve = [&](int k) {
    if (!served[k]) {
      served[k] = true;
      ++served_count;
    }
  };

  // Each station starts with the head of its column.
  std::vector<Station> stations(num_bs);
  for (int bs = 0; bs < num_bs; ++bs) {
    Station& st = stations[bs];
    st.column = &matrix.columns[bs];
    if (st.column->empty()) continue;
    st.members = {st.column->front()};
    st.current = 0;
    serve(st.column->front());
  }

  while (served_count < num_ue) {
    Candidate best;
    for (int bs = 0; bs < num_bs; ++bs) {
      Station& st = stations[bs];
      const std::vector<int>& col = *st.column;
      if (col.empty()) continue;

      // move(): first unserved row at or below current.
      st.next = st.current;
      while (st.next < static_cast<int>(col.size()) && served[col[st.next]]) {
        ++st.next;
      }
      if (st.next == static_cast<int>(col.size())) continue;

      // search(): rows strictly between the cursors are served by some
      // other station; any subset of them may join alongside the unserved
      // UE at row next.
      const std::vector<int> between(col.begin() + st.current + 1,
                                     col.begin() + st.next);
      if (between.size() > kMaxWindowUes) {
        throw std::length_error("search window of " +
                                std::to_string(between.size()) +
                                " UEs is too wide to enumerate");
      }
      const double before = StationSumRate(bs, st.members, table, counter);
      const std::uint64_t num_subsets = std::uint64_t{1} << between.size();
      for (std::uint64_t mask = 0; mask < num_subsets; ++mask) {
        Candidate c;
        c.bs = bs;
        c.subset.push_back(col[st.next]);
        for (std::size_t j = 0; j < between.size(); ++j) {
          if (mask >> j & 1) c.subset.push_back(between[j]);
        }
        std::sort(c.subset.begin(), c.subset.end());
        const std::vector<int> after_set = Merge(st.members, c.subset);
        const double after = StationSumRate(bs, after_set, table, counter);
        c.degradation = before - after;
        ++tr.candidate_subsets;
        if (Better(c, best)) best = std::move(c);
      }
    }

    if (best.bs < 0) {
      // Unreachable while the macro column lists every UE; kept so a
      // malformed table cannot spin forever.
      for (int k = 0; k < num_ue; ++k) {
        if (served[k]) continue;
        auto& members = stations[table.assoc_sbs[k]].members;
        members.insert(std::upper_bound(members.begin(), members.end(), k), k);
        serve(k);
      }
      tr.used_fallback = true;
      break;
    }

    Station& st = stations[best.bs];
    st.members = Merge(st.members, best.subset);
    for (int k : best.subset) serve(k);
    // The unserved UE sits at row next, below every other subset member.
    st.current = st.next;
    ++tr.iterations;
    tr.committed_bs.push_back(best.bs);
    if (tr.iterations > num_ue) {
      throw std::logic_error("greedy admission failed to make progress");
    }
  }

  SolverResult result;
  result.alloc.d_macro.assign(num_ue, 0);
  result.alloc.d_small.assign(num_ue, 0);
  for (int bs = 0; bs < num_bs; ++bs) {
    const Station& st = stations[bs];
    if (!st.column->empty() &&
        !std::binary_search(st.members.begin(), st.members.end(),
                            st.column->front())) {
      throw std::logic_error("station lost its column head");
    }
    for (int k : st.members) {
      (bs == num_bs - 1 ? result.alloc.d_macro : result.alloc.d_small)[k] = 1;
    }
  }
  RateCounter scratch;
  result.report = Evaluate(result.alloc, table, scratch);
  result.report.rate_calc_count = counter.count();
  result.notes = "iterations=" + std::to_string(tr.iterations) +
                 " subsets=" + std::to_string(tr.candidate_subsets);
  if (tr.used_fallback) result.notes += " fallback";
  return result;
}

}  // namespace dcpa
