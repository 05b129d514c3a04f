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

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace cftomo {

using cplx = std::complex<double>;

/// Relativistic dispersion omega = sqrt(m^2 + |k|^2).
struct KleinGordon {
  double mass = 0.0;
};

/// Bogoliubov dispersion of condensate density fluctuations,
/// omega = sqrt(E (E + 2 g rho0)) with E = k^2 / (2 m_B).
struct Bogoliubov {
  double atom_mass = 1.0;
  double g_rho0 = 1.0;
};

using Dispersion = std::variant<KleinGordon, Bogoliubov>;

// The one place the condensate dispersion lives; swap here for another model.
double bogoliubov_frequency(double k, double atom_mass, double g_rho0);

/// u_k + v_k = sqrt(E_k / omega_k), the density-fluctuation coupling weight.
double bogoliubov_density_weight(double k, double atom_mass, double g_rho0);

using ModeIndex = std::vector<int>;

/// Discrete field modes on an n-torus of side L. Wave vectors are
/// k = 2 pi j / L; every mode must have a strictly positive frequency.
class ModeSet {
 public:
  ModeSet(int spatial_dim, double box_side, double mass, std::vector<ModeIndex> indices);
  ModeSet(int spatial_dim, double box_side, Dispersion dispersion, std::vector<ModeIndex> indices);

  /// One zero-momentum mode in n = 1, L = 2 pi whose frequency is omega.
  static ModeSet single(double omega);

  int spatial_dim() const { return dim_; }
  double box_side() const { return box_side_; }
  const Dispersion& dispersion() const { return dispersion_; }
  std::size_t size() const { return indices_.size(); }
  const ModeIndex& index(std::size_t mode) const;
  const std::vector<ModeIndex>& indices() const { return indices_; }

  std::vector<double> wave_vector(std::size_t mode) const;
  double wave_number(std::size_t mode) const;
  double omega(std::size_t mode) const;

 private:
  int dim_;
  double box_side_;
  Dispersion dispersion_;
  std::vector<ModeIndex> indices_;
};

struct Vacuum {};
struct Thermal {
  double occupation = 0.0;
};
/// Single-mode squeezing zeta = r e^{i phase}, S = exp[(zeta* a^2 - zeta a^dag^2) / 2].
struct Squeezed {
  double r = 0.0;
  double phase = 0.0;
};
using ModeKind = std::variant<Vacuum, Thermal, Squeezed>;

/// n = 1 / (e^{beta omega} - 1).
double thermal_occupation(double beta, double omega);

/// Mean-zero product Gaussian state, one ModeKind per mode of the ModeSet.
class GaussianFieldState {
 public:
  GaussianFieldState(ModeSet modes, std::vector<ModeKind> kinds);

  static GaussianFieldState vacuum(ModeSet modes);
  static GaussianFieldState thermal(ModeSet modes, double beta);

  const ModeSet& modes() const { return modes_; }
  std::size_t size() const { return kinds_.size(); }
  const ModeKind& kind(std::size_t mode) const;
  const std::vector<ModeKind>& kinds() const { return kinds_; }

 private:
  ModeSet modes_;
  std::vector<ModeKind> kinds_;
};

/// Per-mode complex displacement amplitudes, ordered like the ModeSet.
class DisplacementVector {
 public:
  DisplacementVector() = default;
  explicit DisplacementVector(std::vector<cplx> amplitudes);
  DisplacementVector(std::initializer_list<cplx> amplitudes);

  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t i) const { return values_[i]; }
  std::span<const cplx> values() const { return values_; }
  DisplacementVector negated() const;

 private:
  std::vector<cplx> values_;
};

/// Omega = [[0, 1], [-1, 0]].
Eigen::Matrix2d symplectic_form();

/// Quadrature covariance V_k with x = (a + a^dag)/sqrt2, p = -i(a - a^dag)/sqrt2
/// and V_ij = <{R_i, R_j}>, so the vacuum has V = I.
Eigen::Matrix2d covariance(const GaussianFieldState& state, std::size_t mode);

/// chi(xi) = exp[-1/2 sum_k xi_k^T (Omega V_k Omega^T) xi_k], xi_k = (Re, Im).
cplx char_analytic(const GaussianFieldState& state, const DisplacementVector& xi);

/// Same quantity from the per-kind exponential closed forms. The squeezed
/// term enters with +sinh(2r) Re[e^{i phase} xi*^2]; the Fock oracle fixes
/// this sign (see tests/unit/fock_oracle_test.cpp).
cplx char_closed_form(const GaussianFieldState& state, const DisplacementVector& xi);

/// Tr[rho a a^dag], Tr[rho a^dag a], Tr[rho a a], Tr[rho a^dag a^dag].
struct SecondMoments {
  cplx a_adag;
  cplx adag_a;
  cplx a_a;
  cplx adag_adag;
};
SecondMoments second_moments(const GaussianFieldState& state, std::size_t mode);

/// O = sum_k (a_coeff[k] a_k + adag_coeff[k] a_k^dag). Must be Hermitian.
struct LinearQuadrature {
  std::vector<cplx> a_coeff;
  std::vector<cplx> adag_coeff;
};

/// <O^2> for a Hermitian linear quadrature, so that <e^{-iO}> = e^{-<O^2>/2}.
double gaussian_expectation(const GaussianFieldState& state, const LinearQuadrature& op);

/// Symmetric-ordered moment Tr[rho [(a^dag)^p a^q]_S] of one mode, p + q <= 4.
cplx moments_analytic(const GaussianFieldState& state, std::size_t mode, int p, int q);

inline constexpr int kMaxMomentOrder = 4;

}  // namespace cftomo
