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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "cftomo/errors.hpp"
#include "cftomo/tomography.hpp"

namespace cftomo {
namespace {

const double kPi = M_PI;

GaussianFieldState single(ModeKind kind) { return GaussianFieldState(ModeSet::single(1.0), {kind}); }

ChiFunction exact_chi(const GaussianFieldState& st) {
  return [st](const DisplacementVector& xi) { return char_analytic(st, xi); };
}

// 2^{-1} times the normal density with covariance V / 2 at (x, p).
double analytic_wigner(const Eigen::Matrix2d& v, double x, double p) {
  const Eigen::Matrix2d c = 0.5 * v;
  const Eigen::Vector2d a(x, p);
  return 0.5 * std::exp(-0.5 * a.dot(c.inverse() * a)) / (2.0 * kPi * std::sqrt(c.determinant()));
}

TEST(ChiGrid, Indexing) {
  ChiGrid g(2, 3, 0.5);
  EXPECT_EQ(g.points_per_axis(), 7);
  EXPECT_EQ(g.size(), 7u * 7u * 7u * 7u);
  for (int i : g.multi_index(g.origin())) EXPECT_EQ(i, 3);
  for (std::size_t f : {0ul, 17ul, 1000ul}) {
    EXPECT_EQ(g.flat_index(g.multi_index(f)), f);
    const auto xi = g.displacement(f);
    const auto xm = g.displacement(g.mirror(f));
    for (std::size_t m = 0; m < 2; ++m) EXPECT_EQ(xm[m], -xi[m]);
  }
  EXPECT_TRUE(g.on_boundary(0));
  EXPECT_FALSE(g.on_boundary(g.origin()));
  EXPECT_THROW(ChiGrid(3, 2, 0.1), ValidationError);
  EXPECT_THROW(ChiGrid(2, 40, 0.1), ValidationError);
  EXPECT_THROW(ChiGrid(1, 0, 0.1), ValidationError);
}

TEST(HermitianFill, ThermalHalfGridMatchesAnalytic) {
  const auto st = single(Thermal{1.0});
  const ChiGrid half = make_exact_grid(st, 10, 0.2, true);
  EXPECT_FALSE(half.complete());
  const ChiGrid full = hermitian_fill(half);
  ASSERT_TRUE(full.complete());
  for (std::size_t f = 0; f < full.size(); ++f)
    EXPECT_NEAR(std::abs(full.value(f) - char_analytic(st, full.displacement(f))), 0.0, 1e-15);
}

TEST(HermitianFill, SinglePointConjugates) {
  ChiGrid g(1, 2, 0.1);
  for (std::size_t f = g.origin(); f < g.size(); ++f) g.set(f, 0.0);
  const std::size_t f0 = g.size() - 2;
  g.set(f0, cplx(0.3, 0.1));
  const ChiGrid full = hermitian_fill(g);
  EXPECT_EQ(full.value(full.mirror(f0)), cplx(0.3, -0.1));
}

TEST(HermitianFill, AveragesOverlapAndRejectsGaps) {
  ChiGrid g(1, 1, 0.1);
  for (std::size_t f = 0; f < g.size(); ++f) g.set(f, cplx(0.5, 0.2));
  const ChiGrid full = hermitian_fill(g);
  EXPECT_EQ(full.value(0), cplx(0.5, 0.0));
  ChiGrid gap(1, 1, 0.1);
  gap.set(gap.origin(), 1.0);
  EXPECT_THROW(hermitian_fill(gap), ValidationError);
}

TEST(HermitianFill, SampledGridIsExactlySymmetric) {
  const auto st = single(Squeezed{0.4, 0.7});
  const ChiGrid full = hermitian_fill(sample_grid(st, 8, 0.2, kPi / 2.0, 10000, 5));
  ASSERT_TRUE(full.complete());
  for (std::size_t f = 0; f < full.size(); ++f)
    EXPECT_EQ(full.value(full.mirror(f)), std::conj(full.value(f)));
}

TEST(SampleGrid, IndependentOfThreadCount) {
  const auto st = single(Thermal{0.5});
  const ChiGrid a = sample_grid(st, 6, 0.3, 1.2, 2000, 77, true, 1);
  const ChiGrid b = sample_grid(st, 6, 0.3, 1.2, 2000, 77, true, 4);
  for (std::size_t f = 0; f < a.size(); ++f) {
    ASSERT_EQ(a.present(f), b.present(f));
    if (a.present(f)) EXPECT_EQ(a.value(f), b.value(f));
  }
  EXPECT_EQ(a.provenance, Provenance::Sampled);
}

TEST(SampleGrid, WithinThreeStandardErrors) {
  const auto st = single(Thermal{1.0});
  const ChiGrid g = sample_grid(st, 10, 0.15, kPi / 2.0, 10000, 123, false, 2);
  int inside = 0;
  for (std::size_t f = 0; f < g.size(); ++f) {
    const cplx exact = char_analytic(st, g.displacement(f));
    if (std::abs(g.value(f) - exact) <= 3.0 * g.std_error(f)) ++inside;
  }
  EXPECT_GE(inside, static_cast<int>(0.99 * g.size()));
}

TEST(Wigner, VacuumMatchesGaussianIntegral) {
  const ChiGrid g = make_exact_grid(single(Vacuum{}), 64, 6.0 / 64);
  const WignerGrid w = wigner_transform(g, {64, 0.05});
  EXPECT_EQ(w.normalization, 0.5);
  EXPECT_LE(w.imag_residual, 1e-8);
  const std::size_t c = w.size() / 2;
  EXPECT_NEAR(w.values[c] / w.integral(), 1.0 / kPi, 1e-4 / kPi);
  double worst = 0.0;
  for (std::size_t f = 0; f < w.size(); ++f) {
    const auto idx = w.multi_index(f);
    const double exact =
        analytic_wigner(Eigen::Matrix2d::Identity(), w.coordinate(idx[0]), w.coordinate(idx[1]));
    if (exact > 1e-3 * w.values[c]) worst = std::max(worst, std::abs(w.values[f] / exact - 1.0));
  }
  EXPECT_LE(worst, 1e-4);
  EXPECT_NEAR(w.variance(0), w.variance(1), 1e-12);
  EXPECT_NEAR(w.integral(), w.normalization, 0.02 * w.normalization);
}

TEST(Wigner, ThermalVarianceRatio) {
  const WignerGrid vac = wigner_transform(make_exact_grid(single(Vacuum{}), 64, 6.0 / 64));
  const WignerGrid th = wigner_transform(make_exact_grid(single(Thermal{1.0}), 64, 6.0 / 64));
  for (int a = 0; a < 2; ++a)
    EXPECT_NEAR(th.variance(a) / vac.variance(a), 3.0, 3e-3);
  EXPECT_LE(th.imag_residual, 1e-8);
}

TEST(Wigner, SqueezedVarianceRatio) {
  const WignerGrid w = wigner_transform(make_exact_grid(single(Squeezed{1.0, 0.0}), 96, 0.2));
  EXPECT_NEAR(w.variance(1) / w.variance(0), std::exp(4.0), 1e-3 * std::exp(4.0));
  EXPECT_NEAR(w.variance(0), 0.5 * std::exp(-2.0), 1e-3 * 0.5 * std::exp(-2.0));
}

TEST(Wigner, RefusesUndecayedGrid) {
  EXPECT_THROW(wigner_transform(make_exact_grid(single(Vacuum{}), 10, 0.1)), NumericalCheckError);
  ChiGrid partial = make_exact_grid(single(Vacuum{}), 10, 0.8, true);
  EXPECT_THROW(wigner_transform(partial), ValidationError);
}

TEST(Wigner, TwoModeProductState) {
  GaussianFieldState st(ModeSet(1, 2.0 * kPi, 1.0, {{1}, {2}}), {Thermal{1.0}, Vacuum{}});
  const WignerGrid w = wigner_transform(make_exact_grid(st, 16, 0.4));
  EXPECT_NEAR(w.integral(), 0.25, 1e-6);
  EXPECT_NEAR(w.variance(0) / w.variance(2), 3.0, 1e-3);
  EXPECT_NEAR(w.variance(1) / w.variance(3), 3.0, 1e-3);
}

TEST(Wigner, RoundTrip) {
  for (const ModeKind& kind : {ModeKind{Thermal{0.5}}, ModeKind{Squeezed{0.1, 0.8}}}) {
    const ChiGrid g = make_exact_grid(single(kind), 128, 6.0 / 128);
    const ChiGrid back = inverse_wigner_transform(wigner_transform(g), 128, 6.0 / 128);
    double worst = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f) {
      const cplx v = g.value(f);
      if (std::abs(v) > 1e-3) worst = std::max(worst, std::abs(back.value(f) - v) / std::abs(v));
    }
    EXPECT_LE(worst, 1e-4);
  }
}

TEST(MomentsFd, Examples) {
  EXPECT_NEAR(std::abs(moments_fd(exact_chi(single(Thermal{1.0})), 1, 0, 0, 0, 0.01).value - 1.0),
              0.0, 1e-15);
  EXPECT_NEAR(moments_fd(exact_chi(single(Thermal{1.0})), 1, 0, 1, 1, 0.01).value.real(), 1.5, 1e-3);
  EXPECT_NEAR(std::abs(moments_fd(exact_chi(single(Vacuum{})), 1, 0, 1, 0, 0.01).value), 0.0, 1e-10);
  EXPECT_THROW(moments_fd(exact_chi(single(Vacuum{})), 1, 0, 3, 2, 0.01), ValidationError);
}

TEST(MomentsFd, ConsistentWithAnalytic) {
  const std::vector<ModeKind> kinds{Vacuum{}, Thermal{1.0}, Thermal{0.3}, Squeezed{1.0, 0.0},
                                    Squeezed{0.5, 2.1}};
  for (const auto& k : kinds) {
    const auto st = single(k);
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q) {
        const cplx fd = moments_fd(exact_chi(st), 1, 0, p, q, 0.01).value;
        EXPECT_LE(std::abs(fd - moments_analytic(st, 0, p, q)), 1e-3) << p << "," << q;
      }
  }
}

TEST(MomentsFd, OnGrid) {
  const auto st = single(Thermal{1.0});
  const ChiGrid g = make_exact_grid(st, 8, 0.01);
  EXPECT_NEAR(moments_fd(g, 0, 1, 1, 0.02).value.real(), 1.5, 1e-3);
  EXPECT_THROW(moments_fd(g, 0, 1, 1, 0.015), ValidationError);
  EXPECT_THROW(moments_fd(make_exact_grid(st, 2, 0.01), 0, 2, 2, 0.04), ValidationError);
}

TEST(MomentsFd, SampledGridCarriesErrorBar) {
  const auto st = single(Thermal{1.0});
  const ChiGrid g = hermitian_fill(sample_grid(st, 4, 0.05, kPi / 2.0, 100000, 9));
  const MomentEstimate m = moments_fd(g, 0, 1, 1, 0.1);
  EXPECT_GT(m.std_error, 0.0);
  EXPECT_LT(std::abs(m.value.real() - 1.5), 5.0 * m.std_error + 0.01);
}

TEST(GaussianFit, ExactThermal) {
  const GaussianFit fit = gaussian_fit(make_exact_grid(single(Thermal{1.0}), 16, 0.1));
  EXPECT_TRUE(fit.physical);
  EXPECT_LE((fit.covariance - 3.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(fit.occupations[0], 1.0, 1e-8);
}

TEST(GaussianFit, ExactSqueezed) {
  const GaussianFit fit = gaussian_fit(make_exact_grid(single(Squeezed{1.0, 0.0}), 16, 0.1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fit.covariance);
  EXPECT_NEAR(es.eigenvalues()(0), std::exp(-2.0), 1e-6);
  EXPECT_NEAR(es.eigenvalues()(1), std::exp(2.0), 1e-6);
  EXPECT_NEAR(fit.symplectic_eigenvalues[0], 1.0, 1e-6);
}

TEST(GaussianFit, TwoModes) {
  GaussianFieldState st(ModeSet(1, 2.0 * kPi, 1.0, {{1}, {2}}), {Thermal{0.5}, Squeezed{0.3, 1.0}});
  const GaussianFit fit = gaussian_fit(make_exact_grid(st, 4, 0.2));
  EXPECT_LE((fit.mode_covariance(0) - covariance(st, 0)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE((fit.mode_covariance(1) - covariance(st, 1)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(GaussianFit, SampledThermalRecoversOccupation) {
  const auto st = single(Thermal{1.0});
  std::vector<double> ns;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GaussianFit fit =
        gaussian_fit(hermitian_fill(sample_grid(st, 10, 0.1, kPi / 2.0, 100000, seed, true, 4)));
    EXPECT_NEAR(fit.occupations[0], 1.0, 0.05) << "seed " << seed;
    ns.push_back(fit.occupations[0]);
  }
  const double mean = std::accumulate(ns.begin(), ns.end(), 0.0) / ns.size();
  double var = 0.0;
  for (double n : ns) var += (n - mean) * (n - mean);
  const double se = std::sqrt(var / (ns.size() - 1) / ns.size());
  EXPECT_LE(std::abs(mean - 1.0), 3.0 * se);
}

TEST(GaussianFit, FlagsUnphysicalFit) {
  // |chi| growing away from the origin cannot come from a state.
  const GaussianFit fit = gaussian_fit(
      make_exact_grid([](const DisplacementVector& xi) { return std::exp(0.1 * std::norm(xi[0])); }, 1,
                      4, 0.1));
  EXPECT_FALSE(fit.physical);
  EXPECT_FALSE(fit.diagnostic.empty());
}

}  // namespace
}  // namespace cftomo
