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

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cftomo/gaussian_field.hpp"

namespace cftomo {

/// Normalized spherical Gaussian e^{-r^2/2 sigma^2} / (2 pi sigma^2)^{n/2}.
struct SphericalGaussian {
  double sigma = 1.0;
};
/// Point-like detector, F(x) = delta(x).
struct DeltaSmearing {};
/// Piecewise-linear radial profile F(r), zero beyond the last radius.
struct RadialProfile {
  std::vector<double> radius;
  std::vector<double> value;
};
using SmearingProfile = std::variant<SphericalGaussian, DeltaSmearing, RadialProfile>;

/// Optional multiplicative weight on the smearing transform; used by the
/// condensate mapping, where u_k + v_k plays the role of a form factor.
struct BogoliubovWeight {
  double atom_mass = 1.0;
  double g_rho0 = 1.0;
};

struct SmearingFunction {
  SmearingProfile profile = DeltaSmearing{};
  std::optional<BogoliubovWeight> spectral_weight;
};

/// F~(k) = int d^n x F(x) e^{i k.x}.
cplx smearing_ft(const SmearingFunction& f, std::span<const double> k, int n);

struct ConstantSwitching {
  double value = 1.0;
};
/// eta(s) = exp[-(s - center)^2 / (2 width^2)].
struct GaussianSwitching {
  double center = 0.0;
  double width = 1.0;
};
/// Piecewise-linear eta(s) through the tabulated points.
struct TabulatedSwitching {
  std::vector<double> time;
  std::vector<double> value;
};
using SwitchingFunction = std::variant<ConstantSwitching, GaussianSwitching, TabulatedSwitching>;

/// The window e^{-(s - T/2)^2 / (T^2/72)} over a total time T.
GaussianSwitching gaussian_window(double total_time);

double switching_value(const SwitchingFunction& eta, double s);

/// eta~_k(tau) = int_0^tau eta(s) ds / sqrt(2 L^n omega_k).
double switching_integral(const SwitchingFunction& eta, double tau, double omega, double box_side,
                          int spatial_dim);

/// N repetitions of [tau - pi - tau - pi]; total time 2 N tau.
struct PulseSchedule {
  double coupling = 0.01;
  double tau = 1.0;
  int segments = 1;
  SmearingFunction smearing;
  SwitchingFunction switching = ConstantSwitching{1.0};

  double total_time() const { return 2.0 * segments * tau; }
  void validate() const;
};

/// sin(N x) tan(x / 2), finite at x = pi (mod 2 pi) where it tends to -2 N (-1)^N.
double sin_tan_product(int segments, double x);

/// xi_k = -4 lambda eta~ F~* / (omega tau) sin(N omega tau) tan(omega tau / 2) e^{i N omega tau}
/// from precomputed eta~_k(tau) and F~(k).
cplx displacement_from_transforms(const PulseSchedule& sched, double omega, double eta_tilde,
                                  cplx smearing_tilde);

cplx displacement_param(const PulseSchedule& sched, std::span<const double> k, double omega,
                        double box_side, int spatial_dim);
cplx displacement_param(const PulseSchedule& sched, const ModeSet& modes, std::size_t mode);

/// Displacements of every mode in the set.
DisplacementVector displacement_vector(const PulseSchedule& sched, const ModeSet& modes);

struct ManifoldPoint {
  int segments;
  double tau;
  cplx xi;
};

/// Closed curves xi_k(tau) for each N, tau_grid strictly increasing and positive.
std::vector<ManifoldPoint> reachable_manifold(const PulseSchedule& schedule_template,
                                              const ModeSet& modes, std::size_t mode,
                                              std::span<const int> segment_counts,
                                              std::span<const double> tau_grid);

}  // namespace cftomo
