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

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcpa/solvers.h"

namespace dcpa {

namespace {

constexpr double kTieTolerance = 1e-12;

// Walks all 3^K digit vectors in canonical order, keeping per-station
// serving counts up to date. Objective terms are computed exactly as
// Evaluate() does and summed in the same order, so values agree bit for
// bit with Evaluate().
class ProfileEnumerator {
 public:
  explicit ProfileEnumerator(const ChannelTable& table)
      : table_(table),
        num_ue_(table.num_ue()),
        digits_(num_ue_, 0),
        small_count_(table.num_sbs(), 0),
        ues_of_sbs_(table.num_sbs()),
        se_macro_(num_ue_),
        se_small_(num_ue_) {
    for (int k = 0; k < num_ue_; ++k) {
      ues_of_sbs_[table.assoc_sbs[k]].push_back(k);
      se_macro_[k] = std::log2(1.0 + table.snr_macro[k]);
      se_small_[k] = std::log2(1.0 + table.sinr_small[k]);
    }
    // Digit 0 is (1,1): everyone starts dual-served.
    macro_count_ = num_ue_;
    for (int k = 0; k < num_ue_; ++k) ++small_count_[table.assoc_sbs[k]];
  }

  const std::vector<std::uint8_t>& digits() const { return digits_; }

  double Value() const {
    double sum = 0.0;
    const double bw_m = table_.params.bw_macro_hz;
    const double bw_s = table_.params.bw_small_hz;
    for (int k = 0; k < num_ue_; ++k) {
      if (UsesMacro(kAllProfiles[digits_[k]])) {
        sum += bw_m / macro_count_ * se_macro_[k];
      }
    }
    for (std::size_t i = 0; i < ues_of_sbs_.size(); ++i) {
      for (int k : ues_of_sbs_[i]) {
        if (UsesSmall(kAllProfiles[digits_[k]])) {
          sum += bw_s / small_count_[i] * se_small_[k];
        }
      }
    }
    return sum;
  }

  // Returns false once the odometer wraps past the last vector.
  bool Advance() {
    for (int k = 0; k < num_ue_; ++k) {
      if (digits_[k] < 2) {
        Change(k, digits_[k] + 1);
        return true;
      }
      Change(k, 0);
    }
    return false;
  }

 private:
  void Change(int k, int digit) {
    const Profile before = kAllProfiles[digits_[k]];
    const Profile after = kAllProfiles[digit];
    macro_count_ += int{UsesMacro(after)} - int{UsesMacro(before)};
    small_count_[table_.assoc_sbs[k]] +=
        int{UsesSmall(after)} - int{UsesSmall(before)};
    digits_[k] = static_cast<std::uint8_t>(digit);
  }

  const ChannelTable& table_;
  int num_ue_;
  std::vector<std::uint8_t> digits_;
  int macro_count_ = 0;
  std::vector<int> small_count_;
  std::vector<std::vector<int>> ues_of_sbs_;
  std::vector<double> se_macro_;
  std::vector<double> se_small_;
};

int BestUe(const std::vector<double>& quality, const ChannelTable& table,
           int sbs) {
  int best = -1;
  for (int k = 0; k < table.num_ue(); ++k) {
    if (sbs >= 0 && table.assoc_sbs[k] != sbs) continue;
    if (best < 0 || quality[k] > quality[best]) best = k;
  }
  return best;
}

}  // namespace

std::int64_t BruteForceOpCount(int num_ue) {
  if (num_ue < 0 || num_ue > 36) {
    throw std::overflow_error("K * 3^K does not fit in 64 bits for K = " +
                              std::to_string(num_ue));
  }
  std::int64_t power = 1;
  for (int k = 0; k < num_ue; ++k) power *= 3;
  return num_ue * power;
}

SolverResult SolveBruteForce(const ChannelTable& table, RateCounter& counter,
                             const BruteForceOptions& options) {
  const int num_ue = table.num_ue();
  if (num_ue < 1) throw std::invalid_argument("brute force needs K >= 1");
  if (num_ue > options.max_ue && !options.override_cap) {
    throw std::length_error("K = " + std::to_string(num_ue) +
                            " exceeds the brute-force cap of " +
                            std::to_string(options.max_ue) +
                            " (pass the override flag to force it)");
  }

  ProfileEnumerator it(table);
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<std::uint8_t> best_digits;
  std::int64_t candidates = 0;
  do {
    counter.Tick(num_ue);
    ++candidates;
    const double value = it.Value();
    if (value > best_value) {
      best_value = value;
      best_digits = it.digits();
    }
  } while (it.Advance());

  SolverResult result;
  result.alloc = Allocation::Uniform(num_ue, Profile::kDual);
  for (int k = 0; k < num_ue; ++k) {
    result.alloc.Set(k, kAllProfiles[best_digits[k]]);
  }
  RateCounter scratch;
  result.report = Evaluate(result.alloc, table, scratch);
  result.report.rate_calc_count = counter.count();
  result.notes = "candidates=" + std::to_string(candidates);
  return result;
}

Proposition1Check CheckProposition1(const ChannelTable& table,
                                    const Allocation& optimum) {
  RateCounter scratch;
  const double opt_value = Evaluate(optimum, table, scratch).sum_rate;
  const double tol = kTieTolerance * std::abs(opt_value);
  const int num_sbs = table.num_sbs();
  const int macro = MacroIndex(table);

  // heads[bs] is -1 for an SBS with no associated UE.
  std::vector<int> heads(num_sbs + 1);
  for (int i = 0; i < num_sbs; ++i) heads[i] = BestUe(table.sinr_small, table, i);
  heads[macro] = BestUe(table.snr_macro, table, -1);
  std::vector<bool> found(num_sbs + 1, false);

  Proposition1Check check;
  ProfileEnumerator it(table);
  do {
    const double value = it.Value();
    if (value > opt_value + tol) {
      std::ostringstream os;
      os.precision(17);
      os << "allocation beats the supplied optimum: " << value << " > "
         << opt_value;
      check.holds = false;
      check.witness = os.str();
      return check;
    }
    if (value < opt_value - tol) continue;
    const auto& digits = it.digits();
    for (int bs = 0; bs <= num_sbs; ++bs) {
      if (heads[bs] < 0) continue;
      const Profile p = kAllProfiles[digits[heads[bs]]];
      if (bs == macro ? UsesMacro(p) : UsesSmall(p)) found[bs] = true;
    }
  } while (it.Advance());

  for (int bs = 0; bs <= num_sbs; ++bs) {
    if (heads[bs] < 0 || found[bs]) continue;
    std::ostringstream os;
    os << (bs == macro ? "MBS" : "SBS " + std::to_string(bs))
       << ": no maximizer serves its best UE " << heads[bs] << " (K="
       << table.num_ue() << ", I=" << num_sbs << ", seed="
       << table.params.seed << ")";
    check.holds = false;
    check.violating_bs = bs;
    check.witness = os.str();
    return check;
  }
  return check;
}

}  // namespace dcpa
