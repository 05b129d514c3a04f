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

#include "cftomo/gaussian_field.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "cftomo/errors.hpp"

namespace cftomo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(phase, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  return wrapped;
}

void check_mode(std::size_t mode, std::size_t count) {
  if (mode >= count)
    throw ValidationError("mode index " + std::to_string(mode) + " out of range (" +
                          std::to_string(count) + " modes)");
}

// Isserlis sum over perfect matchings; vars[i] is true for alpha*, false for alpha.
cplx wick_sum(std::vector<bool> vars, const SecondMoments& m, double sym_number) {
  if (vars.empty()) return 1.0;
  if (vars.size() % 2 != 0) return 0.0;
  const bool first = vars.front();
  cplx total = 0.0;
  for (std::size_t j = 1; j < vars.size(); ++j) {
    const bool other = vars[j];
    cplx pair;
    if (first != other) {
      pair = sym_number;
    } else {
      pair = first ? m.adag_adag : m.a_a;
    }
    std::vector<bool> rest;
    rest.reserve(vars.size() - 2);
    for (std::size_t i = 1; i < vars.size(); ++i)
      if (i != j) rest.push_back(vars[i]);
    total += pair * wick_sum(std::move(rest), m, sym_number);
  }
  return total;
}

}  // namespace

double bogoliubov_frequency(double k, double atom_mass, double g_rho0) {
  const double e = k * k / (2.0 * atom_mass);
  return std::sqrt(e * (e + 2.0 * g_rho0));
}

double bogoliubov_density_weight(double k, double atom_mass, double g_rho0) {
  if (k == 0.0) throw ValidationError("Bogoliubov weight undefined at k = 0");
  const double e = k * k / (2.0 * atom_mass);
  return std::sqrt(e / bogoliubov_frequency(k, atom_mass, g_rho0));
}

ModeSet::ModeSet(int spatial_dim, double box_side, double mass, std::vector<ModeIndex> indices)
    : ModeSet(spatial_dim, box_side, Dispersion{KleinGordon{mass}}, std::move(indices)) {}

ModeSet::ModeSet(int spatial_dim, double box_side, Dispersion dispersion,
                 std::vector<ModeIndex> indices)
    : dim_(spatial_dim),
      box_side_(box_side),
      dispersion_(dispersion),
      indices_(std::move(indices)) {
  if (dim_ < 1 || dim_ > 3) throw ValidationError("spatial_dim must be 1, 2 or 3");
  if (!(box_side_ > 0.0) || !std::isfinite(box_side_))
    throw ValidationError("box_side must be positive and finite");
  std::visit(overloaded{
                 [](const KleinGordon& kg) {
                   if (!(kg.mass >= 0.0) || !std::isfinite(kg.mass))
                     throw ValidationError("mass must be non-negative and finite");
                 },
                 [](const Bogoliubov& b) {
                   if (!(b.atom_mass > 0.0) || !(b.g_rho0 > 0.0))
                     throw ValidationError("Bogoliubov dispersion needs m_B > 0 and g rho0 > 0");
                 },
             },
             dispersion_);
  if (indices_.empty()) throw ValidationError("mode set is empty");
  std::set<ModeIndex> seen;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (static_cast<int>(indices_[i].size()) != dim_)
      throw ValidationError("mode " + std::to_string(i) + " index has wrong dimension");
    if (!seen.insert(indices_[i]).second)
      throw ValidationError("duplicate mode index at position " + std::to_string(i));
    if (!(omega(i) > 0.0))
      throw ValidationError("mode " + std::to_string(i) + " has zero frequency");
  }
}

ModeSet ModeSet::single(double omega) {
  return ModeSet(1, 2.0 * std::numbers::pi, omega, {{0}});
}

const ModeIndex& ModeSet::index(std::size_t mode) const {
  check_mode(mode, size());
  return indices_[mode];
}

std::vector<double> ModeSet::wave_vector(std::size_t mode) const {
  const ModeIndex& j = index(mode);
  std::vector<double> k(j.size());
  for (std::size_t c = 0; c < j.size(); ++c) k[c] = 2.0 * std::numbers::pi * j[c] / box_side_;
  return k;
}

double ModeSet::wave_number(std::size_t mode) const {
  double sum = 0.0;
  for (double kc : wave_vector(mode)) sum += kc * kc;
  return std::sqrt(sum);
}

double ModeSet::omega(std::size_t mode) const {
  const double k = wave_number(mode);
  return std::visit(overloaded{
                        [k](const KleinGordon& kg) { return std::sqrt(kg.mass * kg.mass + k * k); },
                        [k](const Bogoliubov& b) {
                          return bogoliubov_frequency(k, b.atom_mass, b.g_rho0);
                        },
                    },
                    dispersion_);
}

double thermal_occupation(double beta, double omega) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive");
  return 1.0 / std::expm1(beta * omega);
}

GaussianFieldState::GaussianFieldState(ModeSet modes, std::vector<ModeKind> kinds)
    : modes_(std::move(modes)), kinds_(std::move(kinds)) {
  if (kinds_.size() != modes_.size())
    throw ValidationError("state has " + std::to_string(kinds_.size()) + " mode kinds for " +
                          std::to_string(modes_.size()) + " modes");
  for (auto& kind : kinds_) {
    if (auto* t = std::get_if<Thermal>(&kind)) {
      if (!(t->occupation >= 0.0) || !std::isfinite(t->occupation))
        throw ValidationError("thermal occupation must be non-negative");
    } else if (auto* s = std::get_if<Squeezed>(&kind)) {
      if (!(s->r >= 0.0) || !std::isfinite(s->r))
        throw ValidationError("squeezing modulus must be non-negative");
      if (!std::isfinite(s->phase)) throw ValidationError("squeezing phase must be finite");
      s->phase = wrap_phase(s->phase);
    }
  }
}

GaussianFieldState GaussianFieldState::vacuum(ModeSet modes) {
  std::vector<ModeKind> kinds(modes.size(), Vacuum{});
  return GaussianFieldState(std::move(modes), std::move(kinds));
}

GaussianFieldState GaussianFieldState::thermal(ModeSet modes, double beta) {
  std::vector<ModeKind> kinds;
  kinds.reserve(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i)
    kinds.emplace_back(Thermal{thermal_occupation(beta, modes.omega(i))});
  return GaussianFieldState(std::move(modes), std::move(kinds));
}

const ModeKind& GaussianFieldState::kind(std::size_t mode) const {
  check_mode(mode, kinds_.size());
  return kinds_[mode];
}

DisplacementVector::DisplacementVector(std::vector<cplx> amplitudes)
    : values_(std::move(amplitudes)) {
  for (cplx z : values_)
    if (!finite(z)) throw ValidationError("displacement amplitudes must be finite");
}

DisplacementVector::DisplacementVector(std::initializer_list<cplx> amplitudes)
    : DisplacementVector(std::vector<cplx>(amplitudes)) {}

DisplacementVector DisplacementVector::negated() const {
  std::vector<cplx> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -values_[i];
  return DisplacementVector(std::move(out));
}

Eigen::Matrix2d symplectic_form() {
  Eigen::Matrix2d omega;
  omega << 0.0, 1.0, -1.0, 0.0;
  return omega;
}

Eigen::Matrix2d covariance(const GaussianFieldState& state, std::size_t mode) {
  return std::visit(overloaded{
                        [](const Vacuum&) -> Eigen::Matrix2d { return Eigen::Matrix2d::Identity(); },
                        [](const Thermal& t) -> Eigen::Matrix2d {
                          return (2.0 * t.occupation + 1.0) * Eigen::Matrix2d::Identity();
                        },
                        [](const Squeezed& s) -> Eigen::Matrix2d {
                          const double ch = std::cosh(2.0 * s.r);
                          const double sh = std::sinh(2.0 * s.r);
                          Eigen::Matrix2d v;
                          v << ch - std::cos(s.phase) * sh, -std::sin(s.phase) * sh,
                              -std::sin(s.phase) * sh, ch + std::cos(s.phase) * sh;
                          return v;
                        },
                    },
                    state.kind(mode));
}

namespace {

void check_dims(const GaussianFieldState& state, const DisplacementVector& xi) {
  if (xi.size() != state.size())
    throw ValidationError("displacement has " + std::to_string(xi.size()) +
                          " entries, state has " + std::to_string(state.size()) + " modes");
}

}  // namespace

cplx char_analytic(const GaussianFieldState& state, const DisplacementVector& xi) {
  check_dims(state, xi);
  const Eigen::Matrix2d omega = symplectic_form();
  double exponent = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const Eigen::Vector2d v(xi[k].real(), xi[k].imag());
    const Eigen::Matrix2d form = omega * covariance(state, k) * omega.transpose();
    exponent += v.dot(form * v);
  }
  return std::exp(-0.5 * exponent);
}

cplx char_closed_form(const GaussianFieldState& state, const DisplacementVector& xi) {
  check_dims(state, xi);
  double exponent = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double mod2 = std::norm(xi[k]);
    exponent += std::visit(
        overloaded{
            [&](const Vacuum&) { return mod2; },
            [&](const Thermal& t) { return mod2 * (2.0 * t.occupation + 1.0); },
            [&](const Squeezed& s) {
              const cplx c = std::polar(1.0, s.phase) * std::conj(xi[k]) * std::conj(xi[k]);
              return std::cosh(2.0 * s.r) * mod2 + std::sinh(2.0 * s.r) * c.real();
            },
        },
        state.kind(k));
  }
  return std::exp(-0.5 * exponent);
}

SecondMoments second_moments(const GaussianFieldState& state, std::size_t mode) {
  const Eigen::Matrix2d v = covariance(state, mode);
  const double number = 0.25 * (v(0, 0) + v(1, 1)) - 0.5;
  const cplx aa(0.25 * (v(0, 0) - v(1, 1)), 0.5 * v(0, 1));
  return SecondMoments{number + 1.0, number, aa, std::conj(aa)};
}

double gaussian_expectation(const GaussianFieldState& state, const LinearQuadrature& op) {
  if (op.a_coeff.size() != state.size() || op.adag_coeff.size() != state.size())
    throw ValidationError("quadrature coefficients do not match the mode count");
  for (std::size_t k = 0; k < state.size(); ++k) {
    const cplx mu = op.a_coeff[k];
    const cplx nu = op.adag_coeff[k];
    if (!finite(mu) || !finite(nu) || std::abs(nu - std::conj(mu)) > 1e-12 * (1.0 + std::abs(mu)))
      throw ValidationError("operator is not a Hermitian linear quadrature");
  }
  // Modes are uncorrelated and mean-zero, so cross terms vanish.
  cplx total = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const SecondMoments m = second_moments(state, k);
    const cplx mu = op.a_coeff[k];
    const cplx nu = op.adag_coeff[k];
    total += mu * mu * m.a_a + nu * nu * m.adag_adag + mu * nu * (m.a_adag + m.adag_a);
  }
  return total.real();
}

cplx moments_analytic(const GaussianFieldState& state, std::size_t mode, int p, int q) {
  if (p < 0 || q < 0) throw ValidationError("moment orders must be non-negative");
  if (p + q > kMaxMomentOrder)
    throw ValidationError("moment order p + q = " + std::to_string(p + q) +
                          " exceeds the implemented table (4)");
  const SecondMoments m = second_moments(state, mode);
  const double sym_number = 0.5 * (m.a_adag + m.adag_a).real();
  std::vector<bool> vars(static_cast<std::size_t>(p), true);
  vars.insert(vars.end(), static_cast<std::size_t>(q), false);
  return wick_sum(std::move(vars), m, sym_number);
}

}  // namespace cftomo
