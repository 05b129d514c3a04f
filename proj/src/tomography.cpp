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

#include "cftomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <thread>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cftomo/errors.hpp"
#include "cftomo/ramsey_readout.hpp"

namespace cftomo {

namespace {

constexpr std::size_t kMaxTwoModePoints = 64ULL * 64ULL * 64ULL * 64ULL;
constexpr double kBoundaryDecay = 1e-6;
constexpr double kBoundaryNoiseSigmas = 5.0;

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_grid_shape(int num_modes, int half, double step) {
  if (num_modes < 1 || num_modes > 2)
    throw ValidationError("grids support one or two modes, got " + std::to_string(num_modes));
  if (half < 1) throw ValidationError("grid half-width must be >= 1");
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("grid step must be positive");
  if (num_modes == 2 && ipow(2 * static_cast<std::size_t>(half) + 1, 4) > kMaxTwoModePoints)
    throw ValidationError("two-mode grids are capped at 64^4 points");
}

// Contract one axis of a row-major array with kernel (out x in).
std::vector<cplx> transform_axis(const std::vector<cplx>& data, std::vector<int>& shape, int axis,
                                 const Eigen::MatrixXcd& kernel) {
  std::size_t outer = 1;
  for (int a = 0; a < axis; ++a) outer *= static_cast<std::size_t>(shape[a]);
  std::size_t inner = 1;
  for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < shape.size(); ++a)
    inner *= static_cast<std::size_t>(shape[a]);
  const auto n_in = static_cast<std::size_t>(shape[axis]);
  const auto n_out = static_cast<std::size_t>(kernel.rows());
  std::vector<cplx> out(outer * n_out * inner, cplx(0.0));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t m = 0; m < n_out; ++m) {
      cplx* dst = &out[(o * n_out + m) * inner];
      for (std::size_t j = 0; j < n_in; ++j) {
        const cplx k = kernel(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j));
        const cplx* src = &data[(o * n_in + j) * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += k * src[i];
      }
    }
  }
  shape[axis] = static_cast<int>(n_out);
  return out;
}

// K(m, j) = scale * exp(i sign sqrt2 u_j v_m), u on the input axis, v on the output axis.
Eigen::MatrixXcd fourier_kernel(int in_half, double in_step, int out_half, double out_step,
                                double sign, double scale) {
  const int n_in = 2 * in_half + 1;
  const int n_out = 2 * out_half + 1;
  Eigen::MatrixXcd k(n_out, n_in);
  for (int m = 0; m < n_out; ++m) {
    const double v = (m - out_half) * out_step;
    for (int j = 0; j < n_in; ++j) {
      const double u = (j - in_half) * in_step;
      k(m, j) = scale * std::polar(1.0, sign * std::numbers::sqrt2 * u * v);
    }
  }
  return k;
}

// After transforming axis pairs (Re xi_k, Im xi_k) -> (p_k, x_k), swap to (x_k, p_k).
template <class T>
std::vector<T> swap_axis_pairs(const std::vector<T>& data, int num_modes, int n) {
  const int axes = 2 * num_modes;
  std::vector<T> out(data.size());
  std::vector<int> idx(axes, 0);
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    std::size_t rem = flat;
    for (int a = axes - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    std::size_t dst = 0;
    for (int a = 0; a < axes; ++a) {
      const int src_axis = (a % 2 == 0) ? a + 1 : a - 1;
      dst = dst * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[src_axis]);
    }
    out[dst] = data[flat];
  }
  return out;
}

std::vector<int> unflatten(std::size_t flat, int axes, int n) {
  std::vector<int> idx(axes);
  for (int a = axes - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return idx;
}

}  // namespace

ChiGrid::ChiGrid(int num_modes, int half, double step)
    : num_modes_(num_modes), half_(half), step_(step) {
  check_grid_shape(num_modes, half, step);
  const std::size_t n = ipow(2 * static_cast<std::size_t>(half) + 1, 2 * num_modes);
  values_.assign(n, cplx(0.0));
  std_errors_.assign(n, 0.0);
  present_.assign(n, 0);
}

std::vector<int> ChiGrid::multi_index(std::size_t flat) const {
  return unflatten(flat, axes(), points_per_axis());
}

std::size_t ChiGrid::flat_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != axes()) throw ValidationError("grid index rank mismatch");
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= points_per_axis()) throw ValidationError("grid index out of range");
    flat = flat * static_cast<std::size_t>(points_per_axis()) + static_cast<std::size_t>(i);
  }
  return flat;
}

DisplacementVector ChiGrid::displacement(std::size_t flat) const {
  const std::vector<int> idx = multi_index(flat);
  std::vector<cplx> xi(static_cast<std::size_t>(num_modes_));
  for (int k = 0; k < num_modes_; ++k) xi[k] = cplx(coordinate(idx[2 * k]), coordinate(idx[2 * k + 1]));
  return DisplacementVector(std::move(xi));
}

bool ChiGrid::on_boundary(std::size_t flat) const {
  for (int i : multi_index(flat))
    if (i == 0 || i == points_per_axis() - 1) return true;
  return false;
}

void ChiGrid::set(std::size_t flat, cplx value, double std_error) {
  values_.at(flat) = value;
  std_errors_[flat] = std_error;
  present_[flat] = 1;
}

void ChiGrid::clear(std::size_t flat) {
  values_.at(flat) = 0.0;
  std_errors_[flat] = 0.0;
  present_[flat] = 0;
}

bool ChiGrid::complete() const {
  return std::all_of(present_.begin(), present_.end(), [](unsigned char c) { return c != 0; });
}

bool in_half_space(const ChiGrid& grid, std::size_t flat) { return flat >= grid.origin(); }

ChiGrid make_exact_grid(const ChiFunction& chi, int num_modes, int half, double step,
                        bool half_space_only) {
  ChiGrid grid(num_modes, half, step);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (half_space_only && !in_half_space(grid, f)) continue;
    grid.set(f, chi(grid.displacement(f)));
  }
  return grid;
}

ChiGrid make_exact_grid(const GaussianFieldState& state, int half, double step,
                        bool half_space_only) {
  return make_exact_grid(
      [&state](const DisplacementVector& xi) { return char_analytic(state, xi); },
      static_cast<int>(state.size()), half, step, half_space_only);
}

ChiGrid sample_grid(const GaussianFieldState& state, int half, double step, double theta,
                    std::uint64_t shots, std::uint64_t seed, bool half_space_only, int threads) {
  if (shots == 0) throw ValidationError("sample_grid needs M >= 1; use make_exact_grid");
  ChiGrid grid(static_cast<int>(state.size()), half, step);
  grid.provenance = Provenance::Sampled;
  grid.shots = shots;
  grid.seed = seed;
  const std::size_t first = half_space_only ? grid.origin() : 0;
  const std::size_t count = grid.size() - first;
  std::vector<ReadoutRecord> records(count);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t f = first + i;
      records[i] = read_out(state, grid.displacement(f), theta, shots, seed, f);
    }
  };
  const auto nthreads = static_cast<std::size_t>(std::max(1, threads));
  if (nthreads == 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(count, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < count; ++i)
    grid.set(first + i, records[i].chi_est, records[i].chi_stderr);
  return grid;
}

ChiGrid hermitian_fill(const ChiGrid& half_grid) {
  ChiGrid out = half_grid;
  for (std::size_t f = half_grid.origin(); f < half_grid.size(); ++f) {
    const std::size_t m = half_grid.mirror(f);
    const bool here = half_grid.present(f);
    const bool there = half_grid.present(m);
    if (here && there) {
      const cplx avg = 0.5 * (half_grid.value(f) + std::conj(half_grid.value(m)));
      const double err =
          (f == m) ? half_grid.std_error(f)
                   : 0.5 * std::hypot(half_grid.std_error(f), half_grid.std_error(m));
      out.set(f, avg, err);
      out.set(m, std::conj(avg), err);
    } else if (here) {
      out.set(m, std::conj(half_grid.value(f)), half_grid.std_error(f));
    } else if (there) {
      out.set(f, std::conj(half_grid.value(m)), half_grid.std_error(m));
    } else {
      throw ValidationError("input is not a half-space grid: neither xi nor -xi is stored at " +
                            std::to_string(f));
    }
  }
  return out;
}

double wigner_normalization(int num_modes) { return std::pow(2.0, -num_modes); }

std::vector<int> WignerGrid::multi_index(std::size_t flat) const {
  return unflatten(flat, 2 * num_modes, points_per_axis());
}

double WignerGrid::integral() const {
  double sum = 0.0;
  for (double w : values) sum += w;
  return sum * std::pow(step, 2 * num_modes);
}

double WignerGrid::mean(int axis) const {
  double sum = 0.0;
  double weight = 0.0;
  for (std::size_t f = 0; f < values.size(); ++f) {
    const double a = coordinate(multi_index(f)[axis]);
    sum += values[f] * a;
    weight += values[f];
  }
  return sum / weight;
}

double WignerGrid::variance(int axis) const {
  const double mu = mean(axis);
  double sum = 0.0;
  double weight = 0.0;
  for (std::size_t f = 0; f < values.size(); ++f) {
    const double d = coordinate(multi_index(f)[axis]) - mu;
    sum += values[f] * d * d;
    weight += values[f];
  }
  return sum / weight;
}

WignerGrid wigner_transform(const ChiGrid& grid, const WignerOptions& options) {
  if (!grid.complete())
    throw ValidationError("Wigner transform needs a complete grid (run hermitian_fill first)");
  double worst = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (!grid.on_boundary(f)) continue;
    const double excess =
        std::abs(grid.value(f)) - kBoundaryNoiseSigmas * grid.std_error(f) - kBoundaryDecay;
    worst = std::max(worst, excess);
    if (excess > 0.0)
      throw NumericalCheckError(
          "chi has not decayed at the grid boundary (|chi| = " +
          std::to_string(std::abs(grid.value(f))) + " at extent " +
          std::to_string(grid.extent()) + "); enlarge the grid to avoid aliasing");
  }

  WignerGrid w;
  w.num_modes = grid.num_modes();
  w.half = options.half >= 0 ? options.half : grid.half();
  w.step = options.step > 0.0 ? options.step
                              : 2.0 * std::numbers::pi /
                                    (std::numbers::sqrt2 * grid.step() * grid.points_per_axis());
  w.normalization = wigner_normalization(w.num_modes);

  const double scale = grid.step() / (2.0 * std::numbers::pi);
  // Re xi_k pairs with p_k via e^{+i sqrt2 Re xi p}; Im xi_k with x_k via e^{-i sqrt2 Im xi x}.
  const Eigen::MatrixXcd k_re = fourier_kernel(grid.half(), grid.step(), w.half, w.step, +1.0, scale);
  const Eigen::MatrixXcd k_im = fourier_kernel(grid.half(), grid.step(), w.half, w.step, -1.0, scale);

  std::vector<cplx> data(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) data[f] = grid.value(f);
  std::vector<int> shape(static_cast<std::size_t>(grid.axes()), grid.points_per_axis());
  for (int a = 0; a < grid.axes(); ++a) data = transform_axis(data, shape, a, a % 2 == 0 ? k_re : k_im);
  data = swap_axis_pairs(data, w.num_modes, w.points_per_axis());

  double max_re = 0.0;
  double max_im = 0.0;
  w.values.resize(data.size());
  for (std::size_t f = 0; f < data.size(); ++f) {
    w.values[f] = data[f].real();
    max_re = std::max(max_re, std::abs(data[f].real()));
    max_im = std::max(max_im, std::abs(data[f].imag()));
  }
  w.imag_residual = max_re > 0.0 ? max_im / max_re : 0.0;
  return w;
}

ChiGrid inverse_wigner_transform(const WignerGrid& wigner, int half, double step) {
  ChiGrid grid(wigner.num_modes, half, step);
  const double scale = std::numbers::sqrt2 * wigner.step;
  // Input axes are (x_k, p_k); x_k -> Im xi_k, p_k -> Re xi_k.
  const Eigen::MatrixXcd k_x = fourier_kernel(wigner.half, wigner.step, half, step, +1.0, scale);
  const Eigen::MatrixXcd k_p = fourier_kernel(wigner.half, wigner.step, half, step, -1.0, scale);
  std::vector<cplx> data(wigner.values.begin(), wigner.values.end());
  std::vector<int> shape(static_cast<std::size_t>(2 * wigner.num_modes), wigner.points_per_axis());
  for (int a = 0; a < 2 * wigner.num_modes; ++a)
    data = transform_axis(data, shape, a, a % 2 == 0 ? k_x : k_p);
  data = swap_axis_pairs(data, wigner.num_modes, grid.points_per_axis());
  for (std::size_t f = 0; f < grid.size(); ++f) grid.set(f, data[f]);
  return grid;
}

namespace {

// Second-order central-difference stencils, offsets in units of the step.
const std::map<int, double>& stencil(int order) {
  static const std::map<int, double> s[5] = {
      {{0, 1.0}},
      {{-1, -0.5}, {1, 0.5}},
      {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
      {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}},
      {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}},
  };
  return s[order];
}

// Coefficients c_a of (d_r - i d_i)^p (d_r + i d_i)^q / 2^{p+q} = sum_a c_a d_r^a d_i^{p+q-a}.
std::vector<cplx> wirtinger_coefficients(int p, int q) {
  std::vector<cplx> poly{1.0};
  auto multiply = [&poly](cplx imag_coeff) {
    std::vector<cplx> next(poly.size() + 1, 0.0);
    // Index = power of d_r; each factor is (d_r + imag_coeff d_i) / 2.
    for (std::size_t a = 0; a < poly.size(); ++a) {
      next[a + 1] += 0.5 * poly[a];
      next[a] += 0.5 * imag_coeff * poly[a];
    }
    poly = std::move(next);
  };
  for (int i = 0; i < p; ++i) multiply(cplx(0.0, -1.0));
  for (int i = 0; i < q; ++i) multiply(cplx(0.0, 1.0));
  return poly;
}

using OffsetWeights = std::map<std::pair<int, int>, cplx>;

// Adds factor * (-1)^q * D(step) to the weights; offsets are stored in units
// of h/2, and one stencil step spans `unit` of those.
void add_plain_estimate(OffsetWeights& weights, int p, int q, double step, int unit, double factor) {
  const int order = p + q;
  const std::vector<cplx> c = wirtinger_coefficients(p, q);
  const double inv = std::pow(step, -order);
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  for (int a = 0; a <= order; ++a) {
    if (c[a] == cplx(0.0)) continue;
    for (const auto& [u, su] : stencil(a))
      for (const auto& [v, sv] : stencil(order - a))
        weights[{u * unit, v * unit}] += factor * sign * c[a] * su * sv * inv;
  }
}

// Richardson (4 D(h/2) - D(h)) / 3.
OffsetWeights moment_weights(int p, int q, double h) {
  OffsetWeights weights;
  if (p + q == 0) {
    weights[{0, 0}] = 1.0;
    return weights;
  }
  add_plain_estimate(weights, p, q, h, 2, -1.0 / 3.0);
  add_plain_estimate(weights, p, q, 0.5 * h, 1, 4.0 / 3.0);
  return weights;
}

void check_moment_args(int num_modes, int mode, int p, int q, double h) {
  if (mode < 0 || mode >= num_modes) throw ValidationError("moment mode index out of range");
  if (p < 0 || q < 0) throw ValidationError("moment orders must be non-negative");
  if (p + q > kMaxMomentOrder) throw ValidationError("moment order p + q exceeds 4");
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("finite-difference step must be positive");
}

}  // namespace

MomentEstimate moments_fd(const ChiFunction& chi, int num_modes, int mode, int p, int q, double h) {
  check_moment_args(num_modes, mode, p, q, h);
  const OffsetWeights weights = moment_weights(p, q, h);
  MomentEstimate est{0.0};
  std::vector<cplx> xi(static_cast<std::size_t>(num_modes), 0.0);
  for (const auto& [offset, w] : weights) {
    xi[static_cast<std::size_t>(mode)] = cplx(offset.first * 0.5 * h, offset.second * 0.5 * h);
    est.value += w * chi(DisplacementVector(xi));
  }
  return est;
}

MomentEstimate moments_fd(const ChiGrid& grid, int mode, int p, int q, double h) {
  check_moment_args(grid.num_modes(), mode, p, q, h);
  const double ratio = 0.5 * h / grid.step();
  const long units = std::lround(ratio);
  if (units < 1 || std::abs(ratio - static_cast<double>(units)) > 1e-9)
    throw ValidationError("h / 2 must be a positive integer multiple of the grid step");

  auto evaluate = [&](const OffsetWeights& weights, double* variance) {
    cplx total = 0.0;
    double var = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(grid.axes()), grid.half());
    for (const auto& [offset, w] : weights) {
      const long i_re = grid.half() + offset.first * units;
      const long i_im = grid.half() + offset.second * units;
      if (i_re < 0 || i_im < 0 || i_re >= grid.points_per_axis() || i_im >= grid.points_per_axis())
        throw ValidationError("finite-difference stencil exits the grid");
      idx[static_cast<std::size_t>(2 * mode)] = static_cast<int>(i_re);
      idx[static_cast<std::size_t>(2 * mode + 1)] = static_cast<int>(i_im);
      const std::size_t f = grid.flat_index(idx);
      if (!grid.present(f)) throw ValidationError("stencil point missing from the grid");
      total += w * grid.value(f);
      var += std::norm(w) * grid.std_error(f) * grid.std_error(f);
    }
    if (variance) *variance = var;
    return total;
  };

  MomentEstimate est{0.0};
  double var = 0.0;
  est.value = evaluate(moment_weights(p, q, h), &var);
  est.std_error = std::sqrt(var);
  if (grid.provenance == Provenance::Sampled && p + q > 0) {
    // Richardson changes the O(h^2) estimate by roughly its truncation error;
    // once the noise bar exceeds that, shrinking h only adds noise.
    OffsetWeights fine;
    add_plain_estimate(fine, p, q, 0.5 * h, 1, 1.0);
    const cplx coarse = evaluate(fine, nullptr);
    const double truncation = std::abs(est.value - coarse);
    if (est.std_error > truncation) {
      est.noise_limited = true;
      est.diagnostic = "h is below the noise floor: error bar " + std::to_string(est.std_error) +
                       " exceeds the discretization error " + std::to_string(truncation);
    }
  }
  return est;
}

Eigen::Matrix2d GaussianFit::mode_covariance(int mode) const {
  return covariance.block<2, 2>(2 * mode, 2 * mode);
}

GaussianFit gaussian_fit(const ChiGrid& grid) {
  const int dim = grid.axes();
  const int nparams = dim * (dim + 1) / 2;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> weights;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (!grid.present(f) || f == grid.origin()) continue;
    const double mag = std::abs(grid.value(f));
    const double err = grid.std_error(f);
    if (grid.provenance == Provenance::Sampled) {
      if (!(err > 0.0) || mag < 5.0 * err) continue;
    } else if (!(mag > 1e-12)) {
      continue;
    }
    const std::vector<int> idx = grid.multi_index(f);
    std::vector<double> u(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) u[a] = grid.coordinate(idx[a]);
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(nparams));
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) row.push_back((a == b ? 1.0 : 2.0) * u[a] * u[b]);
    rows.push_back(std::move(row));
    rhs.push_back(-2.0 * std::log(mag));
    // Var(ln|chi|) ~ (err / |chi|)^2.
    weights.push_back(grid.provenance == Provenance::Sampled ? mag * mag / (err * err) : mag * mag);
  }
  if (static_cast<int>(rows.size()) < nparams)
    throw ValidationError("too few usable grid points for a Gaussian fit");

  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), nparams);
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double sw = std::sqrt(weights[i]);
    for (int c = 0; c < nparams; ++c) a(static_cast<Eigen::Index>(i), c) = sw * rows[i][c];
    y(static_cast<Eigen::Index>(i)) = sw * rhs[i];
  }
  const Eigen::VectorXd theta = a.colPivHouseholderQr().solve(y);

  Eigen::MatrixXd form(dim, dim);
  int c = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) form(i, j) = form(j, i) = theta(c++);

  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < grid.num_modes(); ++k) omega.block<2, 2>(2 * k, 2 * k) = symplectic_form();

  GaussianFit fit;
  // form = Omega V Omega^T  =>  V = Omega^T form Omega.
  fit.covariance = omega.transpose() * form * omega;
  fit.points_used = rows.size();
  fit.residual = std::sqrt((a * theta - y).squaredNorm() / static_cast<double>(rows.size()));

  const Eigen::EigenSolver<Eigen::MatrixXd> es(omega * fit.covariance);
  std::vector<double> nus;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i).imag() > 0.0) nus.push_back(es.eigenvalues()(i).imag());
  std::sort(nus.begin(), nus.end());
  fit.symplectic_eigenvalues = nus;

  for (int k = 0; k < grid.num_modes(); ++k) {
    const double det = fit.mode_covariance(k).determinant();
    fit.occupations.push_back(det > 0.0 ? 0.5 * (std::sqrt(det) - 1.0) : -0.5);
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym(fit.covariance);
  const bool positive = sym.eigenvalues().minCoeff() > 0.0;
  const bool uncertainty =
      static_cast<int>(nus.size()) == grid.num_modes() &&
      std::all_of(nus.begin(), nus.end(), [](double nu) { return nu >= 1.0 - 1e-6; });
  fit.physical = positive && uncertainty;
  if (!positive) {
    fit.diagnostic = "fitted covariance is not positive definite (undersampled or noisy grid)";
  } else if (!uncertainty) {
    fit.diagnostic = "fitted covariance violates the uncertainty bound det V >= 1";
  }
  return fit;
}

}  // namespace cftomo
