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

#include <array>
#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "cftomo/gaussian_field.hpp"

namespace cftomo {

// Qubit basis ordering is (|g>, |e>). Pauli matrices are the standard ones
// with |e> as the +1 eigenvector of sigma_z, so a qubit left in |g> has
// <sigma_z> = -1.
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

/// R(theta, phi) = cos(theta/2) I - i sin(theta/2) [cos(phi) sx + sin(phi) sy].
Eigen::Matrix2cd rotate(double theta, double phi);

class QubitState {
 public:
  /// Throws ValidationError if |b| exceeds 1 beyond rounding.
  explicit QubitState(std::array<double, 3> bloch);
  static QubitState from_density(const Eigen::Matrix2cd& rho);

  const std::array<double, 3>& bloch() const { return bloch_; }
  double x() const { return bloch_[0]; }
  double y() const { return bloch_[1]; }
  double z() const { return bloch_[2]; }
  double bloch_norm2() const;
  Eigen::Matrix2cd density_matrix() const;

 private:
  std::array<double, 3> bloch_;
};

/// Reduced qubit state after the pulse sequence:
/// b = (sin(theta) Im chi, sin(theta) Re chi, -cos(theta)).
QubitState final_qubit_state(double theta, cplx chi);

enum class PauliBasis { X, Y, Z };

/// Deterministic generator for one (seed, stream) pair. Streams are
/// independent and can be evaluated in any order.
std::mt19937_64 make_stream_rng(std::uint64_t seed, std::uint64_t stream);

struct ShotEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
};

/// M fresh preparations measured in one Pauli basis; outcomes +-1 with
/// P(+1) = (1 + b)/2. stderr is the binomial standard error sqrt((1 - mean^2)/M).
ShotEstimate sample_shots(const QubitState& qs, PauliBasis basis, std::uint64_t shots,
                          std::mt19937_64& rng);
ShotEstimate sample_shots(const QubitState& qs, PauliBasis basis, std::uint64_t shots,
                          std::uint64_t seed, std::uint64_t stream = 0);

/// Exact expectation in the given basis, wrapped as a zero-error estimate.
ShotEstimate exact_expectation(const QubitState& qs, PauliBasis basis);

/// chi = (<sigma_y> + i <sigma_x>) / sin(theta). Throws ProtocolError if sin(theta) == 0.
cplx estimate_chi(const ShotEstimate& sx, const ShotEstimate& sy, double theta);

/// Per-basis shot budget for a target |delta chi|: ceil(2 / delta^2).
std::uint64_t required_shots(double target_error);

struct ReadoutRecord {
  DisplacementVector xi;
  double theta = 0.0;
  std::uint64_t shots = 0;  // 0: exact mode
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  ShotEstimate sx;
  ShotEstimate sy;
  cplx chi_est;
  double chi_stderr = 0.0;
};

/// One run of the protocol at displacement xi: rotate, entangle, measure X and
/// Y with separate shot budgets (stream 2s and 2s+1 of the seed).
ReadoutRecord read_out(const GaussianFieldState& state, const DisplacementVector& xi, double theta,
                       std::uint64_t shots, std::uint64_t seed, std::uint64_t stream);

}  // namespace cftomo
