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

#include "cftomo/bec_analogue.hpp"

#include <cmath>

#include "cftomo/errors.hpp"

namespace cftomo {

void BecParams::validate() const {
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw ValidationError("rho0 must be positive");
  if (!std::isfinite(g_g) || !std::isfinite(g_e)) throw ValidationError("couplings must be finite");
  if (!(g_rho0 > 0.0) || !std::isfinite(g_rho0)) throw ValidationError("g_rho0 must be positive");
  if (!(m_B > 0.0) || !std::isfinite(m_B)) throw ValidationError("m_B must be positive");
  if (!std::isfinite(omega0)) throw ValidationError("omega0 must be finite");
}

double BecParams::healing_length() const { return 1.0 / std::sqrt(2.0 * m_B * g_rho0); }

double BecParams::sound_speed() const { return std::sqrt(g_rho0 / m_B); }

double bogoliubov_weight(double k, const BecParams& params) {
  params.validate();
  return bogoliubov_density_weight(k, params.m_B, params.g_rho0);
}

MappedProtocol map_to_protocol(const BecParams& params, int spatial_dim, double box_side,
                               std::vector<ModeIndex> indices, const PulseSchedule& schedule_template) {
  params.validate();
  for (const auto& j : indices) {
    bool zero = true;
    for (int c : j) zero = zero && c == 0;
    if (zero) throw ValidationError("condensate mode list must exclude k = 0");
  }
  MappedProtocol out{
      ModeSet(spatial_dim, box_side, Dispersion{Bogoliubov{params.m_B, params.g_rho0}},
              std::move(indices)),
      schedule_template, false};
  out.schedule.coupling = 0.5 * (params.g_e - params.g_g) * std::sqrt(params.rho0);
  out.schedule.smearing.spectral_weight = BogoliubovWeight{params.m_B, params.g_rho0};
  out.no_signal = params.g_e == params.g_g;
  return out;
}

}  // namespace cftomo
