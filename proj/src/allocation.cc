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

#include "dcpa/allocation.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dcpa {

namespace {

void CheckServed(int n_served) {
  if (n_served < 1) {
    throw std::invalid_argument("rate requested for a station serving " +
                                std::to_string(n_served) + " UEs");
  }
}

}  // namespace

const char* ProfileName(Profile p) {
  switch (p) {
    case Profile::kDual:
      return "3C(1,1)";
    case Profile::kMacroOnly:
      return "3C(1,0)";
    case Profile::kSmallOnly:
      return "1A(0,1)";
  }
  return "?";
}

Allocation Allocation::Uniform(int num_ue, Profile p) {
  Allocation alloc;
  alloc.d_macro.assign(num_ue, UsesMacro(p) ? 1 : 0);
  alloc.d_small.assign(num_ue, UsesSmall(p) ? 1 : 0);
  return alloc;
}

Allocation Allocation::FromProfiles(std::span<const Profile> profiles) {
  Allocation alloc = Uniform(static_cast<int>(profiles.size()), Profile::kDual);
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    alloc.Set(static_cast<int>(k), profiles[k]);
  }
  return alloc;
}

void Allocation::Set(int k, Profile p) {
  d_macro[k] = UsesMacro(p) ? 1 : 0;
  d_small[k] = UsesSmall(p) ? 1 : 0;
}

Profile Allocation::profile(int k) const {
  if (d_macro[k] && d_small[k]) return Profile::kDual;
  return d_macro[k] ? Profile::kMacroOnly : Profile::kSmallOnly;
}

bool Allocation::IsValid() const {
  if (d_macro.size() != d_small.size()) return false;
  for (std::size_t k = 0; k < d_macro.size(); ++k) {
    if (!d_macro[k] && !d_small[k]) return false;
  }
  return true;
}

ServingSets ComputeServingSets(const Allocation& alloc,
                               const ChannelTable& table) {
  ServingSets sets;
  sets.small.resize(table.num_sbs());
  for (int k = 0; k < alloc.num_ue(); ++k) {
    if (alloc.d_macro[k]) sets.macro.push_back(k);
    if (alloc.d_small[k]) sets.small[table.assoc_sbs[k]].push_back(k);
  }
  return sets;
}

double MacroRate(int k, int n_served, const ChannelTable& table,
                 RateCounter& counter) {
  CheckServed(n_served);
  counter.Tick();
  return table.params.bw_macro_hz / n_served *
         std::log2(1.0 + table.snr_macro[k]);
}

double SmallRate(int k, int n_served, const ChannelTable& table,
                 RateCounter& counter) {
  CheckServed(n_served);
  counter.Tick();
  return table.params.bw_small_hz / n_served *
         std::log2(1.0 + table.sinr_small[k]);
}

double StationSumRate(int bs, std::span<const int> members,
                      const ChannelTable& table, RateCounter& counter) {
  const int n = static_cast<int>(members.size());
  double sum = 0.0;
  if (bs == MacroIndex(table)) {
    for (int k : members) sum += MacroRate(k, n, table, counter);
    return sum;
  }
  for (int k : members) {
    if (table.assoc_sbs[k] != bs) {
      throw std::invalid_argument("UE " + std::to_string(k) +
                                  " is not associated with SBS " +
                                  std::to_string(bs));
    }
    sum += SmallRate(k, n, table, counter);
  }
  return sum;
}

EvalReport Evaluate(const Allocation& alloc, const ChannelTable& table,
                    RateCounter& counter) {
  if (!alloc.IsValid() || alloc.num_ue() != table.num_ue()) {
    throw std::invalid_argument(
        "invalid allocation: every UE needs at least one serving tier");
  }
  const ServingSets sets = ComputeServingSets(alloc, table);
  EvalReport report;
  report.rate_macro.assign(alloc.num_ue(), 0.0);
  report.rate_small.assign(alloc.num_ue(), 0.0);

  const int n_macro = static_cast<int>(sets.macro.size());
  for (int k : sets.macro) {
    report.rate_macro[k] = MacroRate(k, n_macro, table, counter);
    report.sum_rate += report.rate_macro[k];
  }
  for (const auto& served : sets.small) {
    const int n = static_cast<int>(served.size());
    for (int k : served) {
      report.rate_small[k] = SmallRate(k, n, table, counter);
      report.sum_rate += report.rate_small[k];
    }
  }
  report.rate_calc_count = counter.count();
  return report;
}

}  // namespace dcpa
