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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cftomo/gaussian_field.hpp"

namespace cftomo {

enum class Provenance { Exact, Sampled };

/// Characteristic function sampled on a uniform grid over (Re xi_1, Im xi_1,
/// ..., Re xi_n, Im xi_n). Every axis holds 2 * half + 1 points centred on
/// the origin, so xi and -xi are both grid points. Flat indices are row-major
/// with the last axis fastest; the mirror of flat index i is size() - 1 - i.
class ChiGrid {
 public:
  ChiGrid(int num_modes, int half, double step);

  int num_modes() const { return num_modes_; }
  int axes() const { return 2 * num_modes_; }
  int half() const { return half_; }
  int points_per_axis() const { return 2 * half_ + 1; }
  double step() const { return step_; }
  double extent() const { return half_ * step_; }
  std::size_t size() const { return values_.size(); }
  std::size_t origin() const { return size() / 2; }
  std::size_t mirror(std::size_t flat) const { return size() - 1 - flat; }

  double coordinate(int axis_index) const { return (axis_index - half_) * step_; }
  std::vector<int> multi_index(std::size_t flat) const;
  std::size_t flat_index(std::span<const int> index) const;
  DisplacementVector displacement(std::size_t flat) const;
  bool on_boundary(std::size_t flat) const;

  bool present(std::size_t flat) const { return present_[flat] != 0; }
  cplx value(std::size_t flat) const { return values_[flat]; }
  double std_error(std::size_t flat) const { return std_errors_[flat]; }
  void set(std::size_t flat, cplx value, double std_error = 0.0);
  void clear(std::size_t flat);
  bool complete() const;

  Provenance provenance = Provenance::Exact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

 private:
  int num_modes_;
  int half_;
  double step_;
  std::vector<cplx> values_;
  std::vector<double> std_errors_;
  std::vector<unsigned char> present_;
};

using ChiFunction = std::function<cplx(const DisplacementVector&)>;

/// True for the stored half of a centrally symmetric split (flat >= origin).
bool in_half_space(const ChiGrid& grid, std::size_t flat);

ChiGrid make_exact_grid(const ChiFunction& chi, int num_modes, int half, double step,
                        bool half_space_only = false);
ChiGrid make_exact_grid(const GaussianFieldState& state, int half, double step,
                        bool half_space_only = false);

/// Runs the shot-sampled readout at every stored grid point. Each point uses
/// its own RNG stream (its flat index), so the result does not depend on the
/// evaluation order or thread count.
ChiGrid sample_grid(const GaussianFieldState& state, int half, double step, double theta,
                    std::uint64_t shots, std::uint64_t seed, bool half_space_only = true,
                    int threads = 1);

/// Completes a half-space grid with chi(-xi) = conj chi(xi). Points stored on
/// both sides are replaced by (chi(xi) + conj chi(-xi)) / 2.
ChiGrid hermitian_fill(const ChiGrid& half_grid);

/// Quasiprobability over quadrature axes (x_1, p_1, ..., x_n, p_n).
struct WignerGrid {
  int num_modes = 1;
  int half = 0;
  double step = 0.0;
  std::vector<double> values;
  double imag_residual = 0.0;  // max |Im W| / max |Re W| before discarding Im
  double normalization = 0.0;  // analytic integral of W over phase space

  int points_per_axis() const { return 2 * half + 1; }
  std::size_t size() const { return values.size(); }
  double coordinate(int axis_index) const { return (axis_index - half) * step; }
  std::vector<int> multi_index(std::size_t flat) const;
  double integral() const;
  double mean(int axis) const;
  double variance(int axis) const;
};

struct WignerOptions {
  int half = -1;       // < 0: same point count as the chi grid
  double step = 0.0;   // <= 0: DFT-reciprocal step 2 pi / (sqrt2 dxi (2 half + 1))
};

/// W(alpha) = int d^{2n}xi / (2 pi)^{2n} exp[i sqrt2 xi^T Omega alpha] chi(xi),
/// alpha = (x, p) quadratures, evaluated as a direct separable sum over the grid.
/// Throws NumericalCheckError when chi has not decayed at the grid boundary.
WignerGrid wigner_transform(const ChiGrid& grid, const WignerOptions& options = {});

/// Integral of W over phase space under the transform above: 2^{-n}.
double wigner_normalization(int num_modes);

/// chi(xi) = 2^n int d^{2n}alpha W(alpha) exp[-i sqrt2 xi^T Omega alpha] onto a new grid.
ChiGrid inverse_wigner_transform(const WignerGrid& wigner, int half, double step);

struct MomentEstimate {
  cplx value;
  double std_error = 0.0;
  bool noise_limited = false;
  std::string diagnostic;
};

/// (-1)^q d^{p+q} chi / d xi^p d xi*^q at 0 for one mode, from central
/// differences with step h and Richardson extrapolation over (h, h/2).
MomentEstimate moments_fd(const ChiFunction& chi, int num_modes, int mode, int p, int q, double h);

/// Same on a sampled grid; h / 2 must be a positive integer multiple of the grid step.
MomentEstimate moments_fd(const ChiGrid& grid, int mode, int p, int q, double h);

struct GaussianFit {
  Eigen::MatrixXd covariance;               // 2n x 2n, quadrature order (x_1, p_1, ...)
  std::vector<double> symplectic_eigenvalues;
  std::vector<double> occupations;           // (sqrt(det V_k) - 1) / 2 per mode
  double residual = 0.0;                     // weighted RMS of -2 ln|chi| misfit
  std::size_t points_used = 0;
  bool physical = true;
  std::string diagnostic;

  Eigen::Matrix2d mode_covariance(int mode) const;
};

/// Weighted least squares of -2 ln|chi| against xi^T (Omega V Omega^T) xi.
GaussianFit gaussian_fit(const ChiGrid& grid);

}  // namespace cftomo
