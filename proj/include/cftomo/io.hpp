// Copyright 2026 The cftomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cftomo/bec_analogue.hpp"
#include "cftomo/fock_oracle.hpp"
#include "cftomo/gaussian_field.hpp"
#include "cftomo/pulse_protocol.hpp"
#include "cftomo/tomography.hpp"

namespace cftomo {

using json = nlohmann::ordered_json;

// 129 points per axis over [-6, 6].
struct GridSpec {
  int half = 64;
  double step = 0.09375;
};

struct ManifoldSpec {
  std::vector<int> segments{1};
  std::size_t mode = 0;
  double tau_max = 0.0;  // <= 0: one full period 2 pi / omega
  int tau_points = 360;
};

struct ChiScanSpec {
  std::string source = "grid";  // grid | manifold
  bool sampled = false;
};

struct WignerSpec {
  int half = -1;
  double step = 0.0;
  bool sampled = false;
};

struct MomentsSpec {
  std::size_t mode = 0;
  int p = 1;
  int q = 1;
  double h = 0.02;
  bool sampled = false;
};

struct BecSpec {
  BecParams params;
  int spatial_dim = 1;
  double box_side = 100.0;
  std::vector<ModeIndex> indices{{1}};
};

struct RunConfig {
  GaussianFieldState state = GaussianFieldState::vacuum(ModeSet::single(1.0));
  PulseSchedule schedule;
  GridSpec grid;
  std::uint64_t shots = 10000;
  double theta = 1.5707963267948966;
  std::uint64_t seed = 1;
  std::string output;
  int threads = 1;
  bool timestamp = false;
  ManifoldSpec manifold;
  ChiScanSpec chi_scan;
  WignerSpec wigner;
  MomentsSpec moments;
  OracleSuiteOptions oracle;
  BecSpec bec;
};

// Each from_json validates as it goes and throws ValidationError with the
// offending key.
json to_json(const ModeSet& modes);
json to_json(const GaussianFieldState& state);
GaussianFieldState state_from_json(const json& j);

json to_json(const SmearingFunction& f);
SmearingFunction smearing_from_json(const json& j);
json to_json(const SwitchingFunction& eta);
SwitchingFunction switching_from_json(const json& j);
json to_json(const PulseSchedule& sched);
PulseSchedule schedule_from_json(const json& j);

json to_json(const BecParams& params);
BecParams bec_params_from_json(const json& j);

json to_json(const RunConfig& config);
RunConfig config_from_json(const json& j);
RunConfig load_config(const std::string& path);

json to_json(const OracleRecord& record);

/// Writes "# key: value" lines; the config is embedded as one compact JSON line.
void write_header(std::ostream& os, const std::string& command, const RunConfig& config,
                  const std::vector<std::pair<std::string, std::string>>& extra = {});

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_chi_grid(std::ostream& os, const ChiGrid& grid);
void write_wigner_grid(std::ostream& os, const WignerGrid& grid);

}  // namespace cftomo
