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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cftomo/errors.hpp"
#include "cftomo/fock_oracle.hpp"
#include "cftomo/gaussian_field.hpp"
#include "cftomo/pulse_protocol.hpp"
#include "cftomo/ramsey_readout.hpp"
#include "cftomo/tomography.hpp"

using namespace cftomo;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

GaussianFieldState single(ModeKind kind, double omega = 1.0) {
  return GaussianFieldState(ModeSet::single(omega), {std::move(kind)});
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  OracleSuiteOptions opt;
  opt.draws = 100;
  opt.dim = 40;
  opt.max_coupling = 0.02;
  opt.max_segments = 6;
  const auto records = run_oracle_suite(opt);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int identity = 0, residual = 0, failed = 0;
  double worst_defect = 0.0, worst_residual = 0.0;
  for (const auto& r : records) {
    if (r.check == "displacement_identity") {
      ++identity;
      worst_defect = std::max(worst_defect, r.passed ? r.defect : INFINITY);
      failed += (r.passed && r.defect <= 1e-5) ? 0 : 1;
    } else if (r.check == "displacement_residual") {
      ++residual;
      worst_residual = std::max(worst_residual, r.passed ? r.defect : INFINITY);
      failed += (r.passed && r.defect <= 1e-6) ? 0 : 1;
    }
  }
  const bool ok = identity == 100 && residual == 100 && failed == 0 && seconds < 60.0;
  return {ok, fmt("100 draws at D=40, max |xi_closed - xi_fock| = %.3g, max residual = %.3g, %.1f s",
                  worst_defect, worst_residual, seconds)};
}

Outcome maximum_displacement() {
  const ModeSet modes(1, 2.0 * kPi, 1.0, {{2}});
  const double w = modes.omega(0);
  PulseSchedule s;
  s.coupling = 0.015;
  s.tau = kPi / w;
  s.smearing.profile = SphericalGaussian{0.4};
  s.switching = GaussianSwitching{0.5 * s.tau, 0.3 * s.tau};
  const std::vector<double> k = modes.wave_vector(0);
  const double eta = switching_integral(s.switching, s.tau, w, modes.box_side(), 1);
  const double ft = std::abs(smearing_ft(s.smearing, k, 1));
  const double law = 8.0 * s.coupling * eta * ft / kPi;
  double spread = 0.0, deviation = 0.0, first = 0.0;
  for (int n = 1; n <= 10; ++n) {
    s.segments = n;
    const double per = std::abs(displacement_param(s, modes, 0)) / n;
    if (n == 1) first = per;
    spread = std::max(spread, std::abs(per - first));
    deviation = std::max(deviation, std::abs(per - law));
  }
  return {spread <= 1e-12 && deviation <= 1e-12,
          fmt("N=1..10 at tau=pi/omega, spread of |xi|/N = %.3g, deviation from law = %.3g", spread,
              deviation)};
}

Outcome qubit_encoding() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int draws = 0;
  while (draws < 1000) {
    const double theta = 2.0 * kPi * u(rng);
    if (std::abs(std::sin(theta)) < 0.1) continue;
    const cplx chi = std::polar(std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    const QubitState qs = final_qubit_state(theta, chi);
    const cplx back = estimate_chi(exact_expectation(qs, PauliBasis::X),
                                   exact_expectation(qs, PauliBasis::Y), theta);
    worst = std::max(worst, std::abs(back - chi));
    ++draws;
  }

  const ModeSet mode = ModeSet::single(1.0);
  const int dim = 40;
  double joint_worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    PulseSchedule s;
    s.coupling = 0.02 * u(rng);
    s.tau = 2.0 * kPi * (0.05 + 0.9 * u(rng));
    s.segments = 1 + static_cast<int>(6 * u(rng)) % 6;
    double theta = 2.0 * kPi * u(rng);
    while (std::abs(std::sin(theta)) < 0.1) theta = 2.0 * kPi * u(rng);
    const auto st = single(Thermal{0.5 * u(rng)});
    const QubitState joint = joint_space_readout(theta, fock_density_matrix(st.kind(0), dim),
                                                 build_segment(s, mode, 0, dim), s.segments);
    const QubitState model =
        final_qubit_state(theta, char_analytic(st, displacement_vector(s, mode)));
    for (int c = 0; c < 3; ++c)
      joint_worst = std::max(joint_worst, std::abs(joint.bloch()[c] - model.bloch()[c]));
  }
  return {worst <= 1e-12 && joint_worst <= 1e-6,
          fmt("round trip max error %.3g over 1000 pairs, joint-space Bloch max error %.3g over 20 draws",
              worst, joint_worst)};
}

Outcome hermitian_symmetry() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  const ModeSet modes(1, 2.0 * kPi, 1.0, {{0}, {1}, {2}});
  const std::vector<GaussianFieldState> states = {
      GaussianFieldState::vacuum(modes),
      GaussianFieldState::thermal(modes, 0.7),
      GaussianFieldState(modes, {Squeezed{1.0, 0.3}, Thermal{2.0}, Squeezed{0.4, -1.2}}),
  };
  double origin = 0.0, worst = 0.0;
  for (const auto& st : states) {
    origin = std::max(origin, std::abs(char_analytic(st, DisplacementVector({0.0, 0.0, 0.0})) - 1.0));
    for (int i = 0; i < 500; ++i) {
      DisplacementVector xi({cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng))});
      const cplx a = char_analytic(st, xi);
      const cplx b = char_analytic(st, xi.negated());
      worst = std::max(worst, std::abs(b - std::conj(a)));
    }
  }
  return {origin == 0.0 && worst <= 1e-12,
          fmt("|chi(0) - 1| = %.3g, max |chi(-xi) - conj chi(xi)| = %.3g", origin, worst)};
}

Outcome shot_noise() {
  const auto st = single(Thermal{0.5});
  const DisplacementVector xi({cplx(0.3, -0.2)});
  const cplx exact = char_analytic(st, xi);
  const double theta = kPi / 2.0;
  std::vector<double> lx, ly;
  for (std::uint64_t m : {1000ull, 10000ull, 100000ull}) {
    double sq = 0.0;
    for (std::uint64_t rep = 0; rep < 200; ++rep)
      sq += std::norm(read_out(st, xi, theta, m, 2024, rep).chi_est - exact);
    lx.push_back(std::log10(static_cast<double>(m)));
    ly.push_back(std::log10(std::sqrt(sq / 200.0)));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
  const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = num / den;
  const double delta = 0.1;
  const std::uint64_t coarse = required_shots(delta);
  const std::uint64_t fine = required_shots(delta / 2.0);
  const bool ok = std::abs(slope + 0.5) <= 0.1 && fine == 4 * coarse;
  return {ok, fmt("RMSE slope %.4f over M = 1e3..1e5 (200 repeats), required_shots %llu -> %llu",
                  slope, static_cast<unsigned long long>(coarse),
                  static_cast<unsigned long long>(fine))};
}

Outcome manifold_and_decay() {
  const ModeSet mode = ModeSet::single(1.0);
  const double omega = mode.omega(0);
  PulseSchedule s;
  s.coupling = 0.01;
  s.smearing.profile = SphericalGaussian{0.1};
  s.switching = gaussian_window(4.0);
  double zero = 0.0, closure = 0.0;
  for (int n : {1, 4, 5, 6, 7, 8, 9, 10}) {
    s.segments = n;
    for (int m = 1; m <= 2 * n; ++m) {
      if (m == n) continue;  // omega tau = pi is the maximum, not a zero
      s.tau = m * kPi / (n * omega);
      const double mag = std::abs(displacement_param(s, mode, 0));
      (m == 2 * n ? closure : zero) = std::max(m == 2 * n ? closure : zero, mag);
    }
  }

  const auto st = single(Thermal{1.0});
  const ChiGrid grid = make_exact_grid(st, 24, 0.125);
  double peak = 0.0;
  std::size_t at = 0;
  for (std::size_t f = 0; f < grid.size(); ++f)
    if (std::abs(grid.value(f)) > peak) {
      peak = std::abs(grid.value(f));
      at = f;
    }
  bool monotone = true;
  for (int dir = 0; dir < 16; ++dir) {
    const cplx unit = std::polar(1.0, 2.0 * kPi * dir / 16.0);
    double prev = 1.0;
    for (int i = 1; i <= 300; ++i) {
      const double v = std::abs(char_analytic(st, {0.01 * i * unit}));
      monotone = monotone && v < prev;
      prev = v;
    }
  }
  // The thermal chi along the reachable curve also peaks at the closure point.
  s.segments = 4;
  double curve_max = 0.0;
  for (int i = 1; i <= 720; ++i) {
    s.tau = 2.0 * kPi * i / (720.0 * omega);
    curve_max = std::max(curve_max, std::abs(char_analytic(st, displacement_vector(s, mode))));
  }
  const bool ok = zero <= 1e-10 && closure <= 1e-10 && at == grid.origin() && peak == 1.0 &&
                  monotone && curve_max <= 1.0;
  return {ok, fmt("max |xi| at zeros %.3g, at closure %.3g; thermal chi peak %.17g at origin=%d, "
                  "monotone=%d",
                  zero, closure, peak, at == grid.origin() ? 1 : 0, monotone ? 1 : 0)};
}

Outcome tomography_loop() {
  const auto thermal = single(Thermal{1.0});
  const GaussianFit exact_fit = gaussian_fit(make_exact_grid(thermal, 16, 0.1));
  const double v_err = (exact_fit.covariance - 3.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();

  double n_worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GaussianFit fit =
        gaussian_fit(hermitian_fill(sample_grid(thermal, 10, 0.1, kPi / 2.0, 100000, seed, true, 4)));
    n_worst = std::max(n_worst, std::abs(fit.occupations[0] - 1.0));
  }

  const ChiFunction chi = [&](const DisplacementVector& xi) { return char_analytic(thermal, xi); };
  const MomentEstimate mom = moments_fd(chi, 1, 0, 1, 1, 0.02);
  const double mom_err = std::abs(mom.value - 1.5);

  const WignerGrid vac = wigner_transform(make_exact_grid(single(Vacuum{}), 96, 0.1));
  const WignerGrid th = wigner_transform(make_exact_grid(thermal, 96, 0.1));
  const WignerGrid sq = wigner_transform(make_exact_grid(single(Squeezed{1.0, 0.0}), 96, 0.2));
  double thermal_ratio = 0.0;
  for (int a = 0; a < 2; ++a)
    thermal_ratio = std::max(thermal_ratio, std::abs(th.variance(a) / vac.variance(a) / 3.0 - 1.0));
  const double squeeze_ratio = std::abs(sq.variance(1) / sq.variance(0) / std::exp(4.0) - 1.0);

  const bool ok = v_err <= 1e-8 && n_worst <= 0.05 && mom_err <= 1e-3 && thermal_ratio <= 1e-3 &&
                  squeeze_ratio <= 1e-3;
  return {ok, fmt("fit V error %.3g; sampled n max deviation %.4f over 20 seeds; moment (1,1) error "
                  "%.3g; Wigner ratio errors %.3g (thermal), %.3g (squeezed)",
                  v_err, n_worst, mom_err, thermal_ratio, squeeze_ratio)};
}

Outcome sign_convention() {
  const int dim = 200;
  double worst = 0.0;
  for (const ModeKind& kind : {ModeKind{Squeezed{1.0, 0.0}}, ModeKind{Squeezed{0.6, 1.1}}}) {
    const auto st = single(kind);
    for (int ir = 0; ir <= 10; ++ir)
      for (int ia = 0; ia < 12; ++ia) {
        const cplx xi = std::polar(0.1 * ir, 2.0 * kPi * ia / 12.0);
        worst = std::max(worst, std::abs(chi_fock(st, xi, dim) - char_analytic(st, {xi})));
      }
  }
  // The opposite sign would disagree at order unity on the same disk.
  const auto st = single(Squeezed{1.0, 0.0});
  const double flipped = std::abs(chi_fock(st, cplx(0.5, 0.0), dim) - char_analytic(st, {cplx(0.0, 0.5)}));
  return {worst <= 1e-8 && flipped > 0.1,
          fmt("max |chi_fock - chi_analytic| on |xi| <= 1 = %.3g (D=%d); swapped-sign gap %.3g", worst,
              dim, flipped)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"maximum-displacement law", maximum_displacement},
      {"qubit-encoding identity", qubit_encoding},
      {"hermitian symmetry and normalization", hermitian_symmetry},
      {"shot-noise scaling", shot_noise},
      {"manifold zeros and thermal decay", manifold_and_decay},
      {"tomography loop", tomography_loop},
      {"sign convention", sign_convention},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.passed ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
