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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cftomo/gaussian_field.hpp"
#include "cftomo/pulse_protocol.hpp"
#include "cftomo/ramsey_readout.hpp"

namespace cftomo {

/// Dense single-mode operators on the Fock states |0>, ..., |D-1>.
class TruncatedMode {
 public:
  explicit TruncatedMode(int dim);

  int dim() const { return dim_; }
  const Eigen::MatrixXcd& a() const { return a_; }
  const Eigen::MatrixXcd& adag() const { return adag_; }
  const Eigen::MatrixXcd& number() const { return number_; }

  /// exp(xi a^dag - xi* a) by matrix exponential.
  Eigen::MatrixXcd displacement(cplx xi) const;
  /// exp(i angle a^dag a).
  Eigen::MatrixXcd rotation(double angle) const;
  /// exp[(zeta* a^2 - zeta a^dag^2) / 2].
  Eigen::MatrixXcd squeeze(cplx zeta) const;

 private:
  int dim_;
  Eigen::MatrixXcd a_;
  Eigen::MatrixXcd adag_;
  Eigen::MatrixXcd number_;
};

/// One [tau - pi - tau - pi] segment for a single mode. With
/// A_pm = omega tau a^dag a +- lambda eta~ (F~ a + F~* a^dag):
/// u_g = exp(-i A_+) exp(-i A_-), u_e = exp(-i A_-) exp(-i A_+).
struct SegmentOperators {
  Eigen::MatrixXcd generator_plus;
  Eigen::MatrixXcd generator_minus;
  Eigen::MatrixXcd u_g;
  Eigen::MatrixXcd u_e;
};

inline constexpr int kMinOracleDim = 8;
inline constexpr double kLeakTolerance = 1e-8;
inline constexpr double kResidualTolerance = 1e-6;

SegmentOperators build_segment(const PulseSchedule& sched, const ModeSet& modes, std::size_t mode,
                               int dim);

/// Largest population in the top two Fock levels of op |0> and op |1>.
double truncation_leak(const Eigen::MatrixXcd& op);

/// Max-norm distance of A and e^{i phi} B on the leading block x block
/// corner, with phi chosen to align them.
double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int block);

struct DisplacementCheck {
  cplx xi_closed;
  cplx xi_fock;
  double defect = 0.0;    // |xi_fock - xi_closed|
  double residual = 0.0;  // distance of U_g^dag U_e to e^{i phi} D(xi_fock)
  double leak = 0.0;
  int dim = 0;
};

/// Forms U_g^dag U_e = (u_g^dag)^N u_e^N and reads xi off
/// <1|U|0> / <0|U|0>. Throws NumericalCheckError on truncation leak or when
/// U is not a displacement to within kResidualTolerance.
DisplacementCheck verify_displacement_identity(const PulseSchedule& sched, const ModeSet& modes,
                                               std::size_t mode, int dim);

/// Distance (modulo global phase) between [D(x) e^{i y n}]^N and
/// D(x (1 - e^{iNy}) / (1 - e^{iy})) e^{i N y n}.
double verify_displacement_composition(cplx x, double y, int segments, int dim);

/// Truncated density matrix of one mode; throws NumericalCheckError if the
/// Fock tail is not negligible (thermal: n^D/(n+1)^{D+1} < 1e-10, squeezed:
/// top amplitudes < 1e-8).
Eigen::MatrixXcd fock_density_matrix(const ModeKind& kind, int dim);

/// chi(xi) = Tr[rho D(xi)] in the truncated Fock basis; single-mode states only.
cplx chi_fock(const GaussianFieldState& state, cplx xi, int dim);

/// Cutoff heuristic (4|xi| + 4)^2, at least kMinOracleDim.
int suggest_dimension(double xi_magnitude);

/// Explicit qubit (x) field evolution: prepare R(theta, 0)|g> (x) rho, apply
/// |g><g| U_g + |e><e| U_e in the 2D-dimensional joint space, trace out the field.
QubitState joint_space_readout(double theta, const Eigen::MatrixXcd& rho_field,
                               const SegmentOperators& segment, int segments);

struct OracleRecord {
  std::string check;
  std::vector<std::pair<std::string, double>> inputs;
  int dim = 0;
  double defect = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct OracleSuiteOptions {
  int draws = 100;
  int dim = 40;
  std::uint64_t seed = 20240101;
  double max_coupling = 0.02;
  int max_segments = 6;
};

/// Default cross-check battery used by `cftomo oracle-check`.
std::vector<OracleRecord> run_oracle_suite(const OracleSuiteOptions& options);

}  // namespace cftomo
