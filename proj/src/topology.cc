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

#include "dcpa/topology.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dcpa {

namespace {

constexpr double kMinDistanceM = 1.0;

void Require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid scenario parameter: " + what);
}

}  // namespace

void ScenarioParams::Validate() const {
  Require(std::isfinite(area_side_m) && area_side_m > 0, "area_side_m > 0");
  Require(num_sbs >= 1, "num_sbs >= 1");
  Require(num_ue >= 1, "num_ue >= 1");
  Require(std::isfinite(bw_macro_hz) && bw_macro_hz > 0, "bw_macro_hz > 0");
  Require(std::isfinite(bw_small_hz) && bw_small_hz > 0, "bw_small_hz > 0");
  Require(std::isfinite(alpha_macro) && alpha_macro > 2, "alpha_macro > 2");
  Require(std::isfinite(alpha_small) && alpha_small > 2, "alpha_small > 2");
  Require(std::isfinite(p_macro_dbm), "p_macro_dbm finite");
  Require(std::isfinite(p_small_dbm), "p_small_dbm finite");
  Require(std::isfinite(n_macro_dbm_hz), "n_macro_dbm_hz finite");
  Require(std::isfinite(n_small_dbm_hz), "n_small_dbm_hz finite");
}

double ScenarioParams::p_macro_w() const { return DbmToWatts(p_macro_dbm); }
double ScenarioParams::p_small_w() const { return DbmToWatts(p_small_dbm); }
double ScenarioParams::noise_macro_w() const {
  return bw_macro_hz * DbmToWatts(n_macro_dbm_hz);
}
double ScenarioParams::noise_small_w() const {
  return bw_small_hz * DbmToWatts(n_small_dbm_hz);
}

double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double Distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::uint64_t Rng::Next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

Topology GenerateTopology(const ScenarioParams& params, Rng& rng) {
  params.Validate();
  const double side = params.area_side_m;
  Topology topo;
  topo.area_side_m = side;
  topo.mbs_pos = {side / 2.0, side / 2.0};
  auto draw = [&] {
    const double x = rng.Uniform() * side;
    const double y = rng.Uniform() * side;
    return Point{x, y};
  };
  topo.sbs_pos.reserve(params.num_sbs);
  for (int i = 0; i < params.num_sbs; ++i) topo.sbs_pos.push_back(draw());
  topo.ue_pos.reserve(params.num_ue);
  for (int k = 0; k < params.num_ue; ++k) topo.ue_pos.push_back(draw());
  return topo;
}

Topology GenerateTopology(const ScenarioParams& params) {
  Rng rng(params.seed);
  return GenerateTopology(params, rng);
}

double ChannelGain(double distance_m, double alpha) {
  return std::pow(std::max(distance_m, kMinDistanceM), -alpha);
}

ChannelTable BuildChannelTable(const Topology& topo,
                               const ScenarioParams& params) {
  params.Validate();
  if (topo.sbs_pos.empty()) {
    throw std::invalid_argument("topology has no small base stations");
  }
  const int num_ue = static_cast<int>(topo.ue_pos.size());
  const int num_sbs = static_cast<int>(topo.sbs_pos.size());
  const double p_m = params.p_macro_w();
  const double p_s = params.p_small_w();
  const double w_m = params.noise_macro_w();
  const double w_s = params.noise_small_w();

  ChannelTable table;
  table.params = params;
  table.params.num_ue = num_ue;
  table.params.num_sbs = num_sbs;
  table.snr_macro.resize(num_ue);
  table.assoc_sbs.resize(num_ue);
  table.sinr_small.resize(num_ue);
  table.rx_macro_w.resize(num_ue);
  table.rx_small_w.resize(num_ue);

  std::vector<double> rx(num_sbs);
  for (int k = 0; k < num_ue; ++k) {
    const Point& ue = topo.ue_pos[k];
    const double rx_m =
        p_m * ChannelGain(Distance(ue, topo.mbs_pos), params.alpha_macro);
    int best = 0;
    for (int i = 0; i < num_sbs; ++i) {
      rx[i] =
          p_s * ChannelGain(Distance(ue, topo.sbs_pos[i]), params.alpha_small);
      if (rx[i] > rx[best]) best = i;
    }
    double interference = 0.0;
    for (int j = 0; j < num_sbs; ++j) {
      if (j != best) interference += rx[j];
    }
    table.rx_macro_w[k] = rx_m;
    table.rx_small_w[k] = rx[best];
    table.snr_macro[k] = rx_m / w_m;
    table.assoc_sbs[k] = best;
    table.sinr_small[k] = rx[best] / (interference + w_s);
  }
  return table;
}

void WriteChannelTable(std::ostream& os, const Topology& topo,
                       const ChannelTable& table) {
  if (topo.ue_pos.size() != table.snr_macro.size()) {
    throw std::invalid_argument("topology and channel table disagree on K");
  }
  const auto old_precision = os.precision(17);
  os << "# index x y snr_macro assoc_sbs sinr_small\n";
  for (int k = 0; k < table.num_ue(); ++k) {
    os << k << ' ' << topo.ue_pos[k].x << ' ' << topo.ue_pos[k].y << ' '
       << table.snr_macro[k] << ' ' << table.assoc_sbs[k] << ' '
       << table.sinr_small[k] << '\n';
  }
  os.precision(old_precision);
}

std::vector<ChannelTableRow> ReadChannelTable(std::istream& is) {
  std::vector<ChannelTableRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    ChannelTableRow row;
    if (!(ss >> row.index >> row.x >> row.y >> row.snr_macro >>
          row.assoc_sbs >> row.sinr_small)) {
      throw std::runtime_error("malformed channel table row at line " +
                               std::to_string(line_no));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dcpa
