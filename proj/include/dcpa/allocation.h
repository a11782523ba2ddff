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

// Dual-connectivity profile assignments and the round-robin sum-rate
// objective. Every per-UE application of the macro or small-cell rate
// formula ticks a RateCounter; the counter value is the complexity metric
// reported for every solver.

#ifndef DCPA_ALLOCATION_H_
#define DCPA_ALLOCATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dcpa/topology.h"

namespace dcpa {

// The three admissible per-UE data-flow settings (D_macro, D_small).
enum class Profile : std::uint8_t {
  kDual,       // (1,1), 3C with split traffic
  kMacroOnly,  // (1,0), 3C with the macro cell carrying all traffic
  kSmallOnly,  // (0,1), 1A
};

inline constexpr Profile kAllProfiles[] = {Profile::kDual, Profile::kMacroOnly,
                                           Profile::kSmallOnly};

constexpr bool UsesMacro(Profile p) { return p != Profile::kSmallOnly; }
constexpr bool UsesSmall(Profile p) { return p != Profile::kMacroOnly; }
const char* ProfileName(Profile p);

// The DFE matrix restricted to each UE's associated SBS.
struct Allocation {
  std::vector<std::uint8_t> d_macro;
  std::vector<std::uint8_t> d_small;

  static Allocation Uniform(int num_ue, Profile p);
  static Allocation FromProfiles(std::span<const Profile> profiles);

  int num_ue() const { return static_cast<int>(d_macro.size()); }
  void Set(int k, Profile p);
  // Precondition: IsValid().
  Profile profile(int k) const;
  // Every UE served by at least one tier and both vectors of equal length.
  bool IsValid() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

class RateCounter {
 public:
  std::int64_t count() const { return count_; }
  void Tick(std::int64_t n = 1) { count_ += n; }

 private:
  std::int64_t count_ = 0;
};

struct ServingSets {
  std::vector<int> macro;
  // small[i] lists the UEs served by SBS i, ascending.
  std::vector<std::vector<int>> small;
};

ServingSets ComputeServingSets(const Allocation& alloc,
                               const ChannelTable& table);

// (B_m / n_served) * log2(1 + SNR_k). Throws std::invalid_argument when
// n_served < 1.
double MacroRate(int k, int n_served, const ChannelTable& table,
                 RateCounter& counter);
// (B_s / n_served) * log2(1 + SINR_k).
double SmallRate(int k, int n_served, const ChannelTable& table,
                 RateCounter& counter);

// Base-station index space used by the solvers: SBSs are 0..I-1 and the
// macro cell is I.
inline int MacroIndex(const ChannelTable& table) { return table.num_sbs(); }

// Tier sum-rate of one base station serving `members` with an equal
// bandwidth split. An empty set yields 0 without touching the counter.
double StationSumRate(int bs, std::span<const int> members,
                      const ChannelTable& table, RateCounter& counter);

struct EvalReport {
  double sum_rate = 0.0;
  std::vector<double> rate_macro;
  std::vector<double> rate_small;
  std::int64_t rate_calc_count = 0;
};

// Full objective. Throws std::invalid_argument on an invalid allocation.
// The counter grows by |K_m| + sum_i |K_i|; rate_calc_count holds the
// counter value afterwards.
EvalReport Evaluate(const Allocation& alloc, const ChannelTable& table,
                    RateCounter& counter);

}  // namespace dcpa

#endif  // DCPA_ALLOCATION_H_
