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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dcpa {

namespace {

std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitComma(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    parts.push_back(Trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

template <typename T>
T ParseNumber(const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

bool ParseBool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("not a boolean: '" + text + "'");
}

std::vector<int> ParseSweep(const std::string& text) {
  std::vector<int> values;
  for (const std::string& part : SplitComma(text)) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      values.push_back(ParseNumber<int>(part));
      continue;
    }
    const int lo = ParseNumber<int>(Trim(part.substr(0, dots)));
    const int hi = ParseNumber<int>(Trim(part.substr(dots + 2)));
    if (hi < lo) throw std::invalid_argument("empty range '" + part + "'");
    for (int k = lo; k <= hi; ++k) values.push_back(k);
  }
  return values;
}

std::vector<Algorithm> ParseAlgorithms(const std::string& text) {
  std::vector<Algorithm> requested;
  for (const std::string& name : SplitComma(text)) {
    const auto a = ParseAlgorithm(name);
    if (!a) throw std::invalid_argument("unknown algorithm '" + name + "'");
    requested.push_back(*a);
  }
  std::vector<Algorithm> ordered;
  for (Algorithm a : kAllAlgorithms) {
    if (std::find(requested.begin(), requested.end(), a) != requested.end()) {
      ordered.push_back(a);
    }
  }
  return ordered;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& ConfigSetters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      {"area_side_m",
       [](auto& c, const auto& v) {
         c.scenario.area_side_m = ParseNumber<double>(v);
       }},
      {"num_sbs",
       [](auto& c, const auto& v) { c.scenario.num_sbs = ParseNumber<int>(v); }},
      {"p_macro_dbm",
       [](auto& c, const auto& v) {
         c.scenario.p_macro_dbm = ParseNumber<double>(v);
       }},
      {"p_small_dbm",
       [](auto& c, const auto& v) {
         c.scenario.p_small_dbm = ParseNumber<double>(v);
       }},
      {"alpha_macro",
       [](auto& c, const auto& v) {
         c.scenario.alpha_macro = ParseNumber<double>(v);
       }},
      {"alpha_small",
       [](auto& c, const auto& v) {
         c.scenario.alpha_small = ParseNumber<double>(v);
       }},
      {"bw_macro_hz",
       [](auto& c, const auto& v) {
         c.scenario.bw_macro_hz = ParseNumber<double>(v);
       }},
      {"bw_small_hz",
       [](auto& c, const auto& v) {
         c.scenario.bw_small_hz = ParseNumber<double>(v);
       }},
      {"n_macro_dbm_hz",
       [](auto& c, const auto& v) {
         c.scenario.n_macro_dbm_hz = ParseNumber<double>(v);
       }},
      {"n_small_dbm_hz",
       [](auto& c, const auto& v) {
         c.scenario.n_small_dbm_hz = ParseNumber<double>(v);
       }},
      {"ue_sweep", [](auto& c, const auto& v) { c.ue_sweep = ParseSweep(v); }},
      {"algorithms",
       [](auto& c, const auto& v) { c.algorithms = ParseAlgorithms(v); }},
      {"trials", [](auto& c, const auto& v) { c.trials = ParseNumber<int>(v); }},
      {"master_seed",
       [](auto& c, const auto& v) {
         c.master_seed = ParseNumber<std::uint64_t>(v);
       }},
      {"output_path", [](auto& c, const auto& v) { c.output_path = v; }},
      {"brute_force_cap",
       [](auto& c, const auto& v) { c.brute_force_cap = ParseNumber<int>(v); }},
      {"override_cap",
       [](auto& c, const auto& v) { c.override_cap = ParseBool(v); }},
      {"threads",
       [](auto& c, const auto& v) { c.threads = ParseNumber<int>(v); }},
  };
  return *setters;
}

// Linear interpolation between order statistics.
double Quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SolverResult RunAlgorithm(Algorithm a, const ChannelTable& table,
                          const ExperimentConfig& cfg, RateCounter& counter) {
  switch (a) {
    case Algorithm::kOptimal:
      return SolveBruteForce(table, counter,
                             {cfg.brute_force_cap, cfg.override_cap});
    case Algorithm::kProposed:
      return SolveProposed(table, counter);
    case Algorithm::k3cOnly:
      return Solve3cOnly(table, counter);
    case Algorithm::k1aOnly:
      return Solve1aOnly(table, counter);
    case Algorithm::kStronger:
      return SolveStronger(table, counter);
  }
  throw std::logic_error("unhandled algorithm");
}

}  // namespace

const char* AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kOptimal:
      return "optimal";
    case Algorithm::kProposed:
      return "proposed";
    case Algorithm::k3cOnly:
      return "3c_only";
    case Algorithm::k1aOnly:
      return "1a_only";
    case Algorithm::kStronger:
      return "stronger";
  }
  return "?";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (name == AlgorithmName(a)) return a;
  }
  return std::nullopt;
}

bool ExperimentConfig::Enabled(Algorithm a) const {
  return std::find(algorithms.begin(), algorithms.end(), a) !=
         algorithms.end();
}

void ExperimentConfig::Validate() const {
  ScenarioParams probe = scenario;
  probe.num_ue = 1;
  probe.Validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (ue_sweep.empty()) throw std::invalid_argument("ue_sweep is empty");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms enabled");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  for (int k : ue_sweep) {
    if (k < 1) throw std::invalid_argument("ue_sweep entries must be >= 1");
    if (Enabled(Algorithm::kOptimal) && k > brute_force_cap && !override_cap) {
      throw std::invalid_argument(
          "ue_sweep contains K = " + std::to_string(k) +
          " above the brute-force cap of " + std::to_string(brute_force_cap) +
          "; disable 'optimal' or set override_cap");
    }
  }
}

ExperimentConfig ParseConfig(std::istream& is) {
  ExperimentConfig cfg;
  cfg.algorithms.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = Trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) {
      throw std::invalid_argument(where + "expected 'key = value'");
    }
    const std::string key = Trim(body.substr(0, eq));
    const std::string value = Trim(body.substr(eq + 1));
    const auto it = ConfigSetters().find(key);
    if (it == ConfigSetters().end()) {
      throw std::invalid_argument(where + "unknown key '" + key + "'");
    }
    try {
      it->second(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + key + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return ParseConfig(in);
}

std::uint64_t ChildSeed(std::uint64_t master_seed, int num_ue, int trial) {
  std::uint64_t h = Mix64(master_seed);
  h = Mix64(h ^ static_cast<std::uint64_t>(num_ue));
  return Mix64(h ^ (static_cast<std::uint64_t>(trial) << 20));
}

TrialRecord RunTrial(const ExperimentConfig& cfg, int num_ue, int trial) {
  ScenarioParams params = cfg.scenario;
  params.num_ue = num_ue;
  params.seed = ChildSeed(cfg.master_seed, num_ue, trial);
  const ChannelTable table =
      BuildChannelTable(GenerateTopology(params), params);

  TrialRecord record;
  record.k_ues = num_ue;
  record.trial = trial;
  record.seed = params.seed;
  std::optional<double> optimal;
  std::optional<double> proposed;
  for (Algorithm a : cfg.algorithms) {
    RateCounter counter;
    const SolverResult r = RunAlgorithm(a, table, cfg, counter);
    record.outcomes.push_back({r.report.sum_rate, r.report.rate_calc_count});
    if (a == Algorithm::kOptimal) optimal = r.report.sum_rate;
    if (a == Algorithm::kProposed) proposed = r.report.sum_rate;
  }
  if (optimal && proposed) record.ratio_proposed_optimal = *proposed / *optimal;
  return record;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  if (!cfg.output_path.empty()) {
    std::ofstream probe(cfg.output_path, std::ios::app);
    if (!probe) {
      throw std::runtime_error("output path is not writable: " +
                               cfg.output_path);
    }
  }

  std::vector<std::pair<int, int>> jobs;
  for (int k : cfg.ue_sweep) {
    for (int t = 0; t < cfg.trials; ++t) jobs.emplace_back(k, t);
  }
  ExperimentResult result;
  result.algorithms = cfg.algorithms;
  result.records.resize(jobs.size());

  std::atomic<std::size_t> next_job{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t j; (j = next_job++) < jobs.size();) {
      try {
        result.records[j] = RunTrial(cfg, jobs[j].first, jobs[j].second);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next_job = jobs.size();
      }
    }
  };
  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  result.summary = Summarize(result.algorithms, result.records);
  return result;
}

std::vector<SummaryRow> Summarize(const std::vector<Algorithm>& algorithms,
                                  const std::vector<TrialRecord>& records) {
  std::vector<int> order;
  std::map<int, std::vector<const TrialRecord*>> by_k;
  for (const TrialRecord& r : records) {
    auto& bucket = by_k[r.k_ues];
    if (bucket.empty()) order.push_back(r.k_ues);
    bucket.push_back(&r);
  }

  std::vector<SummaryRow> rows;
  for (int k : order) {
    const auto& bucket = by_k[k];
    const auto n = static_cast<double>(bucket.size());
    SummaryRow row;
    row.k_ues = k;
    row.trials = static_cast<int>(bucket.size());
    row.optimal_op_count_analytic = BruteForceOpCount(k);
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      AlgorithmSummary s;
      std::vector<double> ops;
      double log_ops = 0.0;
      for (const TrialRecord* r : bucket) {
        s.mean_sum_rate += r->outcomes[a].sum_rate;
        const double op = static_cast<double>(r->outcomes[a].op_count);
        ops.push_back(op);
        log_ops += std::log(std::max(op, 1.0));
      }
      s.mean_sum_rate /= n;
      double ss = 0.0;
      for (const TrialRecord* r : bucket) {
        const double d = r->outcomes[a].sum_rate - s.mean_sum_rate;
        ss += d * d;
      }
      s.std_sum_rate = bucket.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
      s.geomean_op_count = std::exp(log_ops / n);
      s.median_op_count = Quantile(ops, 0.5);
      s.p75_op_count = Quantile(ops, 0.75);
      row.per_algorithm.push_back(s);
    }
    double ratio_sum = 0.0;
    int ratio_n = 0;
    for (const TrialRecord* r : bucket) {
      if (!r->ratio_proposed_optimal) continue;
      const double v = *r->ratio_proposed_optimal;
      ratio_sum += v;
      ++ratio_n;
      row.min_ratio = row.min_ratio ? std::min(*row.min_ratio, v) : v;
      row.max_ratio = row.max_ratio ? std::max(*row.max_ratio, v) : v;
    }
    if (ratio_n > 0) row.mean_ratio = ratio_sum / ratio_n;
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepPlan MakeSweepPlan(std::uint64_t master_seed, int trials,
                        const std::string& out_dir, int threads) {
  const std::string prefix = out_dir.empty() ? "" : out_dir + "/";
  SweepPlan plan;
  plan.gap.ue_sweep = ParseSweep("4..12");
  plan.gap.algorithms.assign(std::begin(kAllAlgorithms),
                             std::end(kAllAlgorithms));
  plan.gap.output_path = prefix + "gap.csv";

  plan.capacity.ue_sweep = ParseSweep("1..20");
  plan.capacity.algorithms = {Algorithm::kProposed, Algorithm::k3cOnly,
                              Algorithm::k1aOnly, Algorithm::kStronger};
  plan.capacity.output_path = prefix + "capacity.csv";

  for (ExperimentConfig* cfg : {&plan.gap, &plan.capacity}) {
    cfg->trials = trials;
    cfg->master_seed = master_seed;
    cfg->threads = threads;
  }
  return plan;
}

}  // namespace dcpa
