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

#include "cftomo/pulse_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cftomo/errors.hpp"

namespace cftomo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

using boost::math::quadrature::gauss_kronrod;

void check_table(std::span<const double> xs, std::span<const double> ys, const char* what) {
  if (xs.size() < 2 || xs.size() != ys.size())
    throw ValidationError(std::string(what) + ": table needs >= 2 points and matching columns");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw ValidationError(std::string(what) + ": non-finite table entry");
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw ValidationError(std::string(what) + ": abscissae must be strictly increasing");
  }
}

double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  if (x < xs.front() || x > xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return ys.back();
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

// Radial kernel of the n-dimensional Fourier transform of an isotropic profile.
double radial_kernel(double r, double k, int n) {
  switch (n) {
    case 1:
      return 2.0 * std::cos(k * r);
    case 2:
      return 2.0 * std::numbers::pi * r * std::cyl_bessel_j(0.0, k * r);
    case 3: {
      const double kr = k * r;
      const double sinc = kr == 0.0 ? 1.0 : std::sin(kr) / kr;
      return 4.0 * std::numbers::pi * r * r * sinc;
    }
    default:
      throw ValidationError("unsupported spatial dimension " + std::to_string(n));
  }
}

double radial_profile_ft(const RadialProfile& prof, double k, int n) {
  check_table(prof.radius, prof.value, "radial smearing profile");
  if (prof.radius.front() < 0.0) throw ValidationError("radial profile starts below r = 0");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < prof.radius.size(); ++i) {
    const double r0 = prof.radius[i];
    const double r1 = prof.radius[i + 1];
    const double f0 = prof.value[i];
    const double f1 = prof.value[i + 1];
    auto integrand = [&](double r) {
      const double f = f0 + (f1 - f0) * (r - r0) / (r1 - r0);
      return f * radial_kernel(r, k, n);
    };
    // Fixed-order rule on pieces short against the kernel's oscillation.
    const int pieces = std::max(1, static_cast<int>(std::ceil(k * (r1 - r0))));
    const double h = (r1 - r0) / pieces;
    for (int p = 0; p < pieces; ++p)
      total += gauss_kronrod<double, 31>::integrate(integrand, r0 + p * h, r0 + (p + 1) * h, 0);
  }
  return total;
}

}  // namespace

cplx smearing_ft(const SmearingFunction& f, std::span<const double> k, int n) {
  if (n < 1 || n > 3) throw ValidationError("unsupported spatial dimension " + std::to_string(n));
  if (static_cast<int>(k.size()) != n)
    throw ValidationError("wave vector dimension does not match spatial dimension");
  double k2 = 0.0;
  for (double kc : k) k2 += kc * kc;
  const double kmod = std::sqrt(k2);
  const double base = std::visit(
      overloaded{
          [&](const SphericalGaussian& g) {
            if (!(g.sigma > 0.0)) throw ValidationError("Gaussian smearing needs sigma > 0");
            return std::exp(-0.5 * g.sigma * g.sigma * k2);
          },
          [](const DeltaSmearing&) { return 1.0; },
          [&](const RadialProfile& p) { return radial_profile_ft(p, kmod, n); },
      },
      f.profile);
  if (f.spectral_weight) {
    return base * bogoliubov_density_weight(kmod, f.spectral_weight->atom_mass,
                                            f.spectral_weight->g_rho0);
  }
  return base;
}

GaussianSwitching gaussian_window(double total_time) {
  // (s - T/2)^2 / (T^2 / 72) == (s - T/2)^2 / (2 (T/12)^2)
  return GaussianSwitching{0.5 * total_time, total_time / 12.0};
}

double switching_value(const SwitchingFunction& eta, double s) {
  return std::visit(overloaded{
                        [](const ConstantSwitching& c) { return c.value; },
                        [s](const GaussianSwitching& g) {
                          const double d = (s - g.center) / g.width;
                          return std::exp(-0.5 * d * d);
                        },
                        [s](const TabulatedSwitching& t) { return interpolate(t.time, t.value, s); },
                    },
                    eta);
}

namespace {

double raw_switching_integral(const SwitchingFunction& eta, double tau) {
  return std::visit(
      overloaded{
          [tau](const ConstantSwitching& c) {
            if (!std::isfinite(c.value) || c.value < 0.0)
              throw ValidationError("constant switching must be finite and non-negative");
            return c.value * tau;
          },
          [tau](const GaussianSwitching& g) {
            if (!(g.width > 0.0) || !std::isfinite(g.center))
              throw ValidationError("Gaussian switching needs width > 0 and finite center");
            const double r = 1.0 / (std::sqrt(2.0) * g.width);
            return g.width * std::sqrt(0.5 * M_PI) *
                   (std::erf((tau - g.center) * r) + std::erf(g.center * r));
          },
          [tau](const TabulatedSwitching& t) {
            check_table(t.time, t.value, "tabulated switching");
            if (t.time.front() > 0.0 || t.time.back() < tau)
              throw ValidationError("tabulated switching does not cover [0, tau]");
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < t.time.size(); ++i) {
              if (t.value[i] < 0.0 || t.value[i + 1] < 0.0)
                throw ValidationError("switching function must be non-negative");
              const double a = std::max(t.time[i], 0.0);
              const double b = std::min(t.time[i + 1], tau);
              if (b <= a) continue;
              const double fa = interpolate(t.time, t.value, a);
              const double fb = interpolate(t.time, t.value, b);
              total += 0.5 * (fa + fb) * (b - a);
            }
            return total;
          },
      },
      eta);
}

}  // namespace

double switching_integral(const SwitchingFunction& eta, double tau, double omega, double box_side,
                          int spatial_dim) {
  if (!(tau > 0.0)) throw ValidationError("tau must be positive");
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  if (!(box_side > 0.0)) throw ValidationError("box side must be positive");
  const double norm = std::sqrt(2.0 * std::pow(box_side, spatial_dim) * omega);
  return raw_switching_integral(eta, tau) / norm;
}

void PulseSchedule::validate() const {
  if (!std::isfinite(coupling)) throw ValidationError("coupling must be finite");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("tau must be positive");
  if (segments < 1) throw ValidationError("segment count N must be >= 1");
}

double sin_tan_product(int segments, double x) {
  // sin(2 N u) / cos(u) = 2 sum_{j<N} (-1)^{N-1-j} sin((2j+1) u), u = x / 2,
  // so the product never divides by cos(u).
  const double u = 0.5 * x;
  double sum = 0.0;
  for (int j = 0; j < segments; ++j) {
    const double sign = ((segments - 1 - j) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::sin((2.0 * j + 1.0) * u);
  }
  return 2.0 * std::sin(u) * sum;
}

cplx displacement_from_transforms(const PulseSchedule& sched, double omega, double eta_tilde,
                                  cplx smearing_tilde) {
  sched.validate();
  const double phase = sched.segments * omega * sched.tau;
  const cplx eps = sched.coupling * eta_tilde * std::conj(smearing_tilde) / (omega * sched.tau);
  return -4.0 * eps * sin_tan_product(sched.segments, omega * sched.tau) * std::polar(1.0, phase);
}

cplx displacement_param(const PulseSchedule& sched, std::span<const double> k, double omega,
                        double box_side, int spatial_dim) {
  sched.validate();
  const double eta = switching_integral(sched.switching, sched.tau, omega, box_side, spatial_dim);
  const cplx ft = smearing_ft(sched.smearing, k, spatial_dim);
  return displacement_from_transforms(sched, omega, eta, ft);
}

cplx displacement_param(const PulseSchedule& sched, const ModeSet& modes, std::size_t mode) {
  const std::vector<double> k = modes.wave_vector(mode);
  return displacement_param(sched, k, modes.omega(mode), modes.box_side(), modes.spatial_dim());
}

DisplacementVector displacement_vector(const PulseSchedule& sched, const ModeSet& modes) {
  std::vector<cplx> xi(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) xi[i] = displacement_param(sched, modes, i);
  return DisplacementVector(std::move(xi));
}

std::vector<ManifoldPoint> reachable_manifold(const PulseSchedule& schedule_template,
                                              const ModeSet& modes, std::size_t mode,
                                              std::span<const int> segment_counts,
                                              std::span<const double> tau_grid) {
  if (segment_counts.empty() || tau_grid.empty())
    throw ValidationError("manifold needs non-empty N list and tau grid");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0)) throw ValidationError("tau grid must be positive");
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))
      throw ValidationError("tau grid must be strictly increasing");
  }
  std::vector<ManifoldPoint> out;
  out.reserve(segment_counts.size() * tau_grid.size());
  PulseSchedule sched = schedule_template;
  for (int n : segment_counts) {
    if (n < 1) throw ValidationError("segment count N must be >= 1");
    sched.segments = n;
    for (double tau : tau_grid) {
      sched.tau = tau;
      out.push_back(ManifoldPoint{n, tau, displacement_param(sched, modes, mode)});
    }
  }
  return out;
}

}  // namespace cftomo
