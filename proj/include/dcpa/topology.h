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

// Two-tier network instances: one macro base station at the center of a
// square area, small base stations and UEs scattered uniformly, and the
// per-UE channel table that every allocation solver consumes.

#ifndef DCPA_TOPOLOGY_H_
#define DCPA_TOPOLOGY_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dcpa {

// Scenario parameters in config-boundary units (m, dBm, dBm/Hz, Hz).
// Defaults are the reference deployment: 500 m square, one macro cell
// overlaid with four small cells.
struct ScenarioParams {
  double area_side_m = 500.0;
  int num_sbs = 4;
  int num_ue = 10;
  double p_macro_dbm = 46.0;
  double p_small_dbm = 20.0;
  double alpha_macro = 4.5;
  double alpha_small = 5.0;
  double bw_macro_hz = 10e6;
  double bw_small_hz = 10e6;
  double n_macro_dbm_hz = -90.0;
  double n_small_dbm_hz = -140.0;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument naming the first offending field.
  void Validate() const;

  double p_macro_w() const;
  double p_small_w() const;
  // Noise power over the full carrier, w = B * n.
  double noise_macro_w() const;
  double noise_small_w() const;
};

// dBm (or dBm/Hz) to W (or W/Hz).
double DbmToWatts(double dbm);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double Distance(const Point& a, const Point& b);

struct Topology {
  double area_side_m = 0.0;
  Point mbs_pos;
  std::vector<Point> sbs_pos;
  std::vector<Point> ue_pos;
};

// Per-UE link quality in linear units. This is the sole input of the
// solvers; tests build synthetic tables directly.
struct ChannelTable {
  std::vector<double> snr_macro;
  std::vector<int> assoc_sbs;
  // SINR toward assoc_sbs[k], interference from every other SBS.
  std::vector<double> sinr_small;
  // Received powers P_m*g_k and P_s*h_{k,assoc} in W, used by the
  // received-power baseline.
  std::vector<double> rx_macro_w;
  std::vector<double> rx_small_w;
  ScenarioParams params;

  int num_ue() const { return static_cast<int>(snr_macro.size()); }
  int num_sbs() const { return params.num_sbs; }
};

// Splitmix-style 64-bit generator with a portable uniform double, so that
// instances are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next();
  // Uniform in [0, 1).
  double Uniform();

 private:
  std::uint64_t state_;
};

// Draws SBS positions first (index order), then UE positions.
Topology GenerateTopology(const ScenarioParams& params, Rng& rng);
// Convenience overload seeded from params.seed.
Topology GenerateTopology(const ScenarioParams& params);

// Log-distance gain max(d, 1 m)^-alpha, no fading or shadowing.
double ChannelGain(double distance_m, double alpha);

// Max-received-power association (ties to the lowest SBS index), macro
// SNR and small-cell SINR for every UE.
ChannelTable BuildChannelTable(const Topology& topo,
                               const ScenarioParams& params);

// One row per UE: index x y snr_macro assoc_sbs sinr_small, whitespace
// separated, preceded by a '#' header line. Doubles use 17 significant
// digits.
void WriteChannelTable(std::ostream& os, const Topology& topo,
                       const ChannelTable& table);

struct ChannelTableRow {
  int index = 0;
  double x = 0.0;
  double y = 0.0;
  double snr_macro = 0.0;
  int assoc_sbs = 0;
  double sinr_small = 0.0;
};
std::vector<ChannelTableRow> ReadChannelTable(std::istream& is);

}  // namespace dcpa

#endif  // DCPA_TOPOLOGY_H_
