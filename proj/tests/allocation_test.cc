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

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "test_util.h"

namespace dcpa {
namespace {

using testing::MakeTable;
using testing::SeededTable;

Allocation RandomAllocation(int num_ue, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> pick(0, 2);
  Allocation alloc = Allocation::Uniform(num_ue, Profile::kDual);
  for (int k = 0; k < num_ue; ++k) alloc.Set(k, kAllProfiles[pick(gen)]);
  return alloc;
}

// Spreadsheet-style recomputation: count each station's load by scanning
// the flags, then add up B/n * log2(1 + q) for every served (UE, tier).
double IndependentSumRate(const Allocation& alloc, const ChannelTable& t) {
  const int num_ue = t.num_ue();
  int macro_load = 0;
  std::vector<int> small_load(t.num_sbs(), 0);
  for (int k = 0; k < num_ue; ++k) {
    macro_load += alloc.d_macro[k];
    small_load[t.assoc_sbs[k]] += alloc.d_small[k];
  }
  long double total = 0;
  for (int k = 0; k < num_ue; ++k) {
    if (alloc.d_macro[k]) {
      total += static_cast<long double>(t.params.bw_macro_hz) / macro_load *
               std::log2l(1.0L + t.snr_macro[k]);
    }
    if (alloc.d_small[k]) {
      total += static_cast<long double>(t.params.bw_small_hz) /
               small_load[t.assoc_sbs[k]] * std::log2l(1.0L + t.sinr_small[k]);
    }
  }
  return static_cast<double>(total);
}

TEST_CASE("allocation validity") {
  Allocation a = Allocation::Uniform(3, Profile::kSmallOnly);
  CHECK(a.IsValid());
  CHECK(a.profile(1) == Profile::kSmallOnly);
  a.d_small[1] = 0;
  CHECK_FALSE(a.IsValid());
  const Profile ps[] = {Profile::kDual, Profile::kMacroOnly, Profile::kSmallOnly};
  const Allocation b = Allocation::FromProfiles(ps);
  CHECK(b.d_macro == std::vector<std::uint8_t>{1, 1, 0});
  CHECK(b.d_small == std::vector<std::uint8_t>{1, 0, 1});
}

TEST_CASE("serving sets") {
  const ChannelTable t =
      MakeTable({1, 1, 1, 1}, {1, 1, 1, 1}, {2, 0, 2, 1}, 3);
  SUBCASE("all macro only") {
    const ServingSets s =
        ComputeServingSets(Allocation::Uniform(4, Profile::kMacroOnly), t);
    CHECK(s.macro == std::vector<int>{0, 1, 2, 3});
    for (const auto& set : s.small) CHECK(set.empty());
  }
  SUBCASE("all small only") {
    const ServingSets s =
        ComputeServingSets(Allocation::Uniform(4, Profile::kSmallOnly), t);
    CHECK(s.macro.empty());
    CHECK(s.small[0] == std::vector<int>{1});
    CHECK(s.small[1] == std::vector<int>{3});
    CHECK(s.small[2] == std::vector<int>{0, 2});
  }
}

TEST_CASE("serving sets match a direct scan on seeded instances") {
  std::mt19937_64 gen(11);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ChannelTable t = SeededTable(4, 9, seed);
    const Allocation alloc = RandomAllocation(9, gen);
    const ServingSets s = ComputeServingSets(alloc, t);
    std::size_t small_total = 0;
    for (int i = 0; i < 4; ++i) {
      std::vector<int> expect;
      for (int k = 0; k < 9; ++k) {
        if (alloc.d_small[k] == 1 && t.assoc_sbs[k] == i) expect.push_back(k);
      }
      CHECK(s.small[i] == expect);
      small_total += expect.size();
    }
    std::vector<int> macro;
    int small_flags = 0;
    for (int k = 0; k < 9; ++k) {
      if (alloc.d_macro[k]) macro.push_back(k);
      small_flags += alloc.d_small[k];
    }
    CHECK(s.macro == macro);
    CHECK(small_total == static_cast<std::size_t>(small_flags));
  }
}

TEST_CASE("per-UE rate formulas") {
  const ChannelTable t =
      MakeTable({1.0, 3.0, 0.003981071705534974}, {1.0, 0.0, 3.0}, {0, 0, 0}, 1);
  RateCounter c;
  CHECK(MacroRate(0, 1, t, c) == doctest::Approx(1e7));
  CHECK(MacroRate(1, 2, t, c) == doctest::Approx(1e7));
  // 1e7 * log2(1 + 3.981e-3), evaluated offline.
  CHECK(MacroRate(2, 1, t, c) == doctest::Approx(57320.70071578141));
  CHECK(SmallRate(0, 1, t, c) == doctest::Approx(1e7));
  CHECK(SmallRate(1, 1, t, c) == 0.0);
  CHECK(c.count() == 5);
  CHECK_THROWS_AS(MacroRate(0, 0, t, c), std::invalid_argument);
  CHECK_THROWS_AS(SmallRate(0, 0, t, c), std::invalid_argument);
  CHECK(c.count() == 5);
}

TEST_CASE("Evaluate on small hand-made instances") {
  SUBCASE("one dual-served UE") {
    const ChannelTable t = MakeTable({3.0}, {1.0}, {0}, 1);
    RateCounter c;
    const EvalReport r =
        Evaluate(Allocation::Uniform(1, Profile::kDual), t, c);
    CHECK(r.sum_rate == doctest::Approx(1e7 * 2 + 1e7 * 1));
    CHECK(c.count() == 2);
    CHECK(r.rate_calc_count == 2);
  }
  SUBCASE("two UEs on the macro cell only") {
    const ChannelTable t = MakeTable({1.0, 3.0}, {5.0, 5.0}, {0, 0}, 1);
    RateCounter c;
    const EvalReport r =
        Evaluate(Allocation::Uniform(2, Profile::kMacroOnly), t, c);
    CHECK(r.sum_rate == doctest::Approx(0.5e7 * (1 + 2)));
    CHECK(r.rate_small == std::vector<double>{0, 0});
    CHECK(c.count() == 2);
  }
  SUBCASE("an unserved UE is rejected") {
    const ChannelTable t = MakeTable({1.0, 3.0}, {5.0, 5.0}, {0, 0}, 1);
    Allocation a = Allocation::Uniform(2, Profile::kDual);
    a.d_macro[1] = 0;
    a.d_small[1] = 0;
    RateCounter c;
    CHECK_THROWS_AS(Evaluate(a, t, c), std::invalid_argument);
  }
}

TEST_CASE("Evaluate agrees with an independent recomputation") {
  std::mt19937_64 gen(2026);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ChannelTable t = SeededTable(4, 10, seed);
    const Allocation alloc = RandomAllocation(10, gen);
    RateCounter c;
    const EvalReport r = Evaluate(alloc, t, c);
    const double expect = IndependentSumRate(alloc, t);
    CHECK(std::abs(r.sum_rate - expect) <= 1e-12 * expect);

    double sum = 0;
    for (int k = 0; k < 10; ++k) {
      CHECK((r.rate_macro[k] > 0) == (alloc.d_macro[k] == 1));
      CHECK((r.rate_small[k] > 0) == (alloc.d_small[k] == 1));
      sum += r.rate_macro[k] + r.rate_small[k];
    }
    CHECK(sum == doctest::Approx(r.sum_rate).epsilon(1e-12));
  }
}

TEST_CASE("Evaluate decomposes into station sum-rates") {
  std::mt19937_64 gen(5);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ChannelTable t = SeededTable(4, 8, seed);
    const Allocation alloc = RandomAllocation(8, gen);
    RateCounter c;
    const double total = Evaluate(alloc, t, c).sum_rate;
    const ServingSets s = ComputeServingSets(alloc, t);
    double parts = StationSumRate(MacroIndex(t), s.macro, t, c);
    for (int i = 0; i < 4; ++i) parts += StationSumRate(i, s.small[i], t, c);
    CHECK(parts == doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("StationSumRate rejects UEs of another SBS") {
  const ChannelTable t = MakeTable({1, 1}, {1, 1}, {0, 1}, 2);
  RateCounter c;
  const std::vector<int> members{0, 1};
  CHECK_THROWS_AS(StationSumRate(0, members, t, c), std::invalid_argument);
  CHECK(StationSumRate(0, std::vector<int>{}, t, c) == 0.0);
}

TEST_CASE("dropping a UE widens the remaining UEs' share") {
  const ChannelTable t = SeededTable(4, 10, 77);
  Allocation alloc = Allocation::Uniform(10, Profile::kDual);
  RateCounter c;
  const EvalReport full = Evaluate(alloc, t, c);
  alloc.Set(3, Profile::kSmallOnly);
  const EvalReport fewer = Evaluate(alloc, t, c);
  for (int k = 0; k < 10; ++k) {
    if (k != 3) CHECK(fewer.rate_macro[k] > full.rate_macro[k]);
  }
}

TEST_CASE("adding a UE to an empty macro set raises the sum-rate") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ChannelTable t = SeededTable(4, 6, seed);
    Allocation alloc = Allocation::Uniform(6, Profile::kSmallOnly);
    RateCounter c;
    const double before = Evaluate(alloc, t, c).sum_rate;
    alloc.Set(static_cast<int>(seed % 6), Profile::kDual);
    CHECK(Evaluate(alloc, t, c).sum_rate > before);
  }
}

TEST_CASE("counter exactness over repeated dual-served evaluations") {
  const ChannelTable t = SeededTable(4, 7, 3);
  const Allocation alloc = Allocation::Uniform(7, Profile::kDual);
  RateCounter c;
  for (int m = 0; m < 13; ++m) Evaluate(alloc, t, c);
  CHECK(c.count() == 2 * 7 * 13);
}

// A UE better than every member of a station's set always raises that
// station's sum-rate when admitted.
TEST_CASE("exchange inequality on randomized sets") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> q(0.0, 50.0);
  std::uniform_int_distribution<int> size(1, 12);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = size(gen);
    std::vector<double> sinr(n + 1);
    double top = 0;
    for (int k = 0; k < n; ++k) top = std::max(top, sinr[k] = q(gen));
    sinr[n] = top + 1e-6 + q(gen);
    const ChannelTable t = MakeTable(sinr, sinr, std::vector<int>(n + 1, 0), 1);
    std::vector<int> members(n);
    for (int k = 0; k < n; ++k) members[k] = k;
    std::vector<int> grown = members;
    grown.push_back(n);
    RateCounter c;
    for (int bs : {0, MacroIndex(t)}) {
      CHECK(StationSumRate(bs, grown, t, c) > StationSumRate(bs, members, t, c));
    }
  }
}

}  // namespace
}  // namespace dcpa
