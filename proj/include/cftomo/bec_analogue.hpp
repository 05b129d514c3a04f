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

#include <vector>

#include "cftomo/gaussian_field.hpp"
#include "cftomo/pulse_protocol.hpp"

namespace cftomo {

/// Impurity in a condensate: H_int = sum_s g_s rho(r_A) |s><s|.
struct BecParams {
  double rho0 = 1.0;
  double g_g = 0.0;
  double g_e = 0.0;
  double g_rho0 = 1.0;  // interaction energy g rho0
  double m_B = 1.0;
  double omega0 = 1.0;  // impurity gap; only enters global phases

  void validate() const;
  double healing_length() const;
  double sound_speed() const;
};

double bogoliubov_weight(double k, const BecParams& params);

struct MappedProtocol {
  ModeSet modes;
  PulseSchedule schedule;
  bool no_signal = false;
};

/// Rewrites a condensate setup as a displacement protocol: lambda_eff =
/// (g_e - g_g) sqrt(rho0) / 2, Bogoliubov dispersion, and the transform of
/// the template's impurity profile multiplied by u_k + v_k. The template's
/// own coupling is ignored.
MappedProtocol map_to_protocol(const BecParams& params, int spatial_dim, double box_side,
                               std::vector<ModeIndex> indices, const PulseSchedule& schedule_template);

}  // namespace cftomo
