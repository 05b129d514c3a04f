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

#include "cftomo/ramsey_readout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cftomo/errors.hpp"

namespace cftomo {

namespace {

constexpr double kBlochTolerance = 1e-12;
constexpr double kChiTolerance = 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  m << 0.0, i, -i, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << -1.0, 0.0, 0.0, 1.0;
  return m;
}

Eigen::Matrix2cd rotate(double theta, double phi) {
  const cplx i(0.0, 1.0);
  return std::cos(0.5 * theta) * Eigen::Matrix2cd::Identity() -
         i * std::sin(0.5 * theta) * (std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y());
}

QubitState::QubitState(std::array<double, 3> bloch) : bloch_(bloch) {
  for (double c : bloch_)
    if (!std::isfinite(c)) throw ValidationError("Bloch vector must be finite");
  if (std::sqrt(bloch_norm2()) > 1.0 + kBlochTolerance)
    throw ValidationError("Bloch vector longer than 1: not a physical qubit state");
}

QubitState QubitState::from_density(const Eigen::Matrix2cd& rho) {
  return QubitState({(rho * pauli_x()).trace().real(), (rho * pauli_y()).trace().real(),
                     (rho * pauli_z()).trace().real()});
}

double QubitState::bloch_norm2() const {
  return bloch_[0] * bloch_[0] + bloch_[1] * bloch_[1] + bloch_[2] * bloch_[2];
}

Eigen::Matrix2cd QubitState::density_matrix() const {
  return 0.5 * (Eigen::Matrix2cd::Identity() + bloch_[0] * pauli_x() + bloch_[1] * pauli_y() +
                bloch_[2] * pauli_z());
}

QubitState final_qubit_state(double theta, cplx chi) {
  if (!std::isfinite(chi.real()) || !std::isfinite(chi.imag()) ||
      std::abs(chi) > 1.0 + kChiTolerance)
    throw ValidationError("|chi| > 1: inconsistent characteristic-function value");
  const double s = std::sin(theta);
  return QubitState({s * chi.imag(), s * chi.real(), -std::cos(theta)});
}

std::mt19937_64 make_stream_rng(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

namespace {

double component(const QubitState& qs, PauliBasis basis) {
  switch (basis) {
    case PauliBasis::X:
      return qs.x();
    case PauliBasis::Y:
      return qs.y();
    case PauliBasis::Z:
      return qs.z();
  }
  return 0.0;
}

}  // namespace

ShotEstimate sample_shots(const QubitState& qs, PauliBasis basis, std::uint64_t shots,
                          std::mt19937_64& rng) {
  if (shots == 0) throw ValidationError("sampling mode needs M >= 1 shots");
  if (shots > static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
    throw ValidationError("shot count too large");
  const double p_plus = std::clamp(0.5 * (1.0 + component(qs, basis)), 0.0, 1.0);
  // Sum of M independent Bernoulli(p) shots.
  std::binomial_distribution<long long> dist(static_cast<long long>(shots), p_plus);
  const long long ups = dist(rng);
  const double m = static_cast<double>(shots);
  const double mean = (2.0 * static_cast<double>(ups) - m) / m;
  const double var = std::max(0.0, 1.0 - mean * mean);
  return ShotEstimate{mean, std::sqrt(var / m), shots};
}

ShotEstimate sample_shots(const QubitState& qs, PauliBasis basis, std::uint64_t shots,
                          std::uint64_t seed, std::uint64_t stream) {
  auto rng = make_stream_rng(seed, stream);
  return sample_shots(qs, basis, shots, rng);
}

ShotEstimate exact_expectation(const QubitState& qs, PauliBasis basis) {
  return ShotEstimate{component(qs, basis), 0.0, 0};
}

cplx estimate_chi(const ShotEstimate& sx, const ShotEstimate& sy, double theta) {
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-12)
    throw ProtocolError("sin(theta) = 0: the qubit carries no information about chi");
  return cplx(sy.mean, sx.mean) / s;
}

std::uint64_t required_shots(double target_error) {
  if (!(target_error > 0.0) || !std::isfinite(target_error))
    throw ValidationError("target error must be positive");
  constexpr double c = 2.0;
  const double m = c / (target_error * target_error);
  // Absorb rounding so that e.g. delta = 0.1 gives exactly 200.
  return static_cast<std::uint64_t>(std::ceil(m * (1.0 - 1e-12)));
}

ReadoutRecord read_out(const GaussianFieldState& state, const DisplacementVector& xi, double theta,
                       std::uint64_t shots, std::uint64_t seed, std::uint64_t stream) {
  const QubitState qs = final_qubit_state(theta, char_analytic(state, xi));
  ReadoutRecord rec;
  rec.xi = xi;
  rec.theta = theta;
  rec.shots = shots;
  rec.seed = seed;
  rec.stream = stream;
  if (shots == 0) {
    rec.sx = exact_expectation(qs, PauliBasis::X);
    rec.sy = exact_expectation(qs, PauliBasis::Y);
  } else {
    rec.sx = sample_shots(qs, PauliBasis::X, shots, seed, 2 * stream);
    rec.sy = sample_shots(qs, PauliBasis::Y, shots, seed, 2 * stream + 1);
  }
  rec.chi_est = estimate_chi(rec.sx, rec.sy, theta);
  rec.chi_stderr = std::hypot(rec.sx.std_error, rec.sy.std_error) / std::abs(std::sin(theta));
  return rec;
}

}  // namespace cftomo
