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

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dcpa/harness.h"

namespace dcpa {

namespace {

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

std::string FormatOptional(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  // getline drops a trailing empty field.
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T ParseField(const std::string& text, int line_no) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::runtime_error("bad CSV field '" + text + "' on line " +
                             std::to_string(line_no));
  }
  return value;
}

}  // namespace

void WriteRecordsCsv(std::ostream& os, const std::vector<Algorithm>& algorithms,
                     const std::vector<TrialRecord>& records) {
  os << "k_ues,trial,seed";
  for (Algorithm a : algorithms) {
    os << ',' << AlgorithmName(a) << "_sumrate," << AlgorithmName(a)
       << "_opcount";
  }
  os << ",ratio_proposed_optimal\n";
  for (const TrialRecord& r : records) {
    os << r.k_ues << ',' << r.trial << ',' << r.seed;
    for (const AlgorithmOutcome& o : r.outcomes) {
      os << ',' << FormatDouble(o.sum_rate) << ',' << o.op_count;
    }
    os << ',' << FormatOptional(r.ratio_proposed_optimal) << '\n';
  }
}

void WriteSummaryCsv(std::ostream& os, const std::vector<Algorithm>& algorithms,
                     const std::vector<SummaryRow>& summary) {
  os << "k_ues,trials";
  for (Algorithm a : algorithms) {
    const std::string n = AlgorithmName(a);
    os << ',' << n << "_mean_sumrate," << n << "_std_sumrate," << n
       << "_geomean_opcount," << n << "_median_opcount," << n
       << "_p75_opcount";
  }
  os << ",optimal_opcount_analytic,mean_ratio,min_ratio,max_ratio\n";
  for (const SummaryRow& row : summary) {
    os << row.k_ues << ',' << row.trials;
    for (const AlgorithmSummary& s : row.per_algorithm) {
      os << ',' << FormatDouble(s.mean_sum_rate) << ','
         << FormatDouble(s.std_sum_rate) << ','
         << FormatDouble(s.geomean_op_count) << ','
         << FormatDouble(s.median_op_count) << ','
         << FormatDouble(s.p75_op_count);
    }
    os << ',' << row.optimal_op_count_analytic << ','
       << FormatOptional(row.mean_ratio) << ',' << FormatOptional(row.min_ratio)
       << ',' << FormatOptional(row.max_ratio) << '\n';
  }
}

std::vector<TrialRecord> ReadRecordsCsv(std::istream& is,
                                        std::vector<Algorithm>* algorithms) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV");
  const std::vector<std::string> header = SplitFields(line);
  if (header.size() < 4 || header[0] != "k_ues" || header[1] != "trial" ||
      header[2] != "seed" || header.back() != "ratio_proposed_optimal" ||
      (header.size() - 4) % 2 != 0) {
    throw std::runtime_error("unrecognized CSV header: " + line);
  }
  std::vector<Algorithm> algs;
  for (std::size_t c = 3; c + 1 < header.size(); c += 2) {
    const std::string& col = header[c];
    const auto suffix = col.rfind("_sumrate");
    const auto a = suffix == std::string::npos
                       ? std::nullopt
                       : ParseAlgorithm(col.substr(0, suffix));
    if (!a || header[c + 1] != std::string(AlgorithmName(*a)) + "_opcount") {
      throw std::runtime_error("unrecognized CSV column: " + col);
    }
    algs.push_back(*a);
  }

  std::vector<TrialRecord> records;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitFields(line);
    if (f.size() != header.size()) {
      throw std::runtime_error("wrong field count on line " +
                               std::to_string(line_no));
    }
    TrialRecord r;
    r.k_ues = ParseField<int>(f[0], line_no);
    r.trial = ParseField<int>(f[1], line_no);
    r.seed = ParseField<std::uint64_t>(f[2], line_no);
    for (std::size_t a = 0; a < algs.size(); ++a) {
      r.outcomes.push_back({ParseField<double>(f[3 + 2 * a], line_no),
                            ParseField<std::int64_t>(f[4 + 2 * a], line_no)});
    }
    if (!f.back().empty()) {
      r.ratio_proposed_optimal = ParseField<double>(f.back(), line_no);
    }
    records.push_back(std::move(r));
  }
  if (algorithms) *algorithms = std::move(algs);
  return records;
}

void EmitCsv(const ExperimentResult& result, const std::string& path) {
  std::ofstream records(path, std::ios::trunc);
  if (!records) throw std::runtime_error("cannot write " + path);
  WriteRecordsCsv(records, result.algorithms, result.records);

  const std::string summary_path = path + ".summary.csv";
  std::ofstream summary(summary_path, std::ios::trunc);
  if (!summary) throw std::runtime_error("cannot write " + summary_path);
  WriteSummaryCsv(summary, result.algorithms, result.summary);
  if (!records.flush() || !summary.flush()) {
    throw std::runtime_error("write failed for " + path);
  }
}

}  // namespace dcpa
