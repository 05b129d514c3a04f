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

#include <cmath>

#include "cftomo/bec_analogue.hpp"
#include "cftomo/errors.hpp"
#include "cftomo/fock_oracle.hpp"

namespace cftomo {
namespace {

BecParams params() {
  BecParams p;
  p.rho0 = 2.0;
  p.g_g = 0.1;
  p.g_e = 0.4;
  p.g_rho0 = 0.5;
  p.m_B = 1.5;
  return p;
}

// E_k = k^2 / (2 m_B) solved for k.
double k_for_energy(double e, double m) { return std::sqrt(2.0 * m * e); }

TEST(BecParams, Validation) {
  BecParams p = params();
  EXPECT_NO_THROW(p.validate());
  EXPECT_NEAR(p.healing_length(), 1.0 / std::sqrt(1.5), 1e-15);
  p.rho0 = 0.0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = params();
  p.g_e = NAN;
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(BogoliubovWeight, Limits) {
  const BecParams p = params();
  EXPECT_NEAR(bogoliubov_weight(1e4, p), 1.0, 1e-6);
  EXPECT_THROW(bogoliubov_weight(0.0, p), ValidationError);
  // Phonon regime: weight ~ sqrt(k / (2 m_B c)).
  const double c = p.sound_speed();
  const double k = 1e-4;
  EXPECT_NEAR(bogoliubov_weight(k, p) / std::sqrt(k / (2.0 * p.m_B * c)), 1.0, 1e-6);
}

TEST(BogoliubovWeight, SubstitutionValues) {
  const BecParams p = params();
  // E_k = 2 g rho0: omega_k = sqrt(8) g rho0, weight (1/2)^{1/4}.
  EXPECT_NEAR(bogoliubov_weight(k_for_energy(2.0 * p.g_rho0, p.m_B), p), std::pow(0.5, 0.25), 1e-14);
  // E_k = g rho0: omega_k = sqrt(3) g rho0, weight (1/sqrt3)^{1/2} = 0.7598.
  EXPECT_NEAR(bogoliubov_weight(k_for_energy(p.g_rho0, p.m_B), p), 0.7598356856515925, 1e-12);
}

TEST(BogoliubovDispersion, LinearInPhononRegime) {
  const BecParams p = params();
  for (double kx : {1e-3, 1e-2, 0.05}) {
    const double k = kx / p.healing_length();
    EXPECT_NEAR(bogoliubov_frequency(k, p.m_B, p.g_rho0) / (p.sound_speed() * k), 1.0, 0.01);
  }
}

TEST(MapToProtocol, CouplingAndFlags) {
  PulseSchedule tmpl;
  tmpl.tau = 0.8;
  tmpl.segments = 2;
  const auto mp = map_to_protocol(params(), 1, 50.0, {{1}, {3}}, tmpl);
  EXPECT_NEAR(mp.schedule.coupling, 0.5 * 0.3 * std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(mp.no_signal);
  EXPECT_EQ(mp.modes.size(), 2u);
  EXPECT_NEAR(mp.modes.omega(0), bogoliubov_frequency(2.0 * M_PI / 50.0, 1.5, 0.5), 1e-15);

  BecParams same = params();
  same.g_e = same.g_g;
  const auto flat = map_to_protocol(same, 1, 50.0, {{1}}, tmpl);
  EXPECT_TRUE(flat.no_signal);
  EXPECT_EQ(displacement_param(flat.schedule, flat.modes, 0), cplx(0.0));
  EXPECT_THROW(map_to_protocol(params(), 2, 50.0, {{0, 0}}, tmpl), ValidationError);
}

TEST(MapToProtocol, PointImpurityTransformIsTheWeight) {
  const auto mp = map_to_protocol(params(), 1, 50.0, {{2}}, PulseSchedule{});
  const auto k = mp.modes.wave_vector(0);
  EXPECT_NEAR(smearing_ft(mp.schedule.smearing, k, 1).real(),
              bogoliubov_weight(mp.modes.wave_number(0), params()), 1e-15);
}

TEST(MapToProtocol, EquivalentToWeightedScalarRun) {
  // A scalar run over the same modes with F~ replaced by w(k) F~.
  PulseSchedule tmpl;
  tmpl.tau = 1.1;
  tmpl.segments = 3;
  tmpl.smearing.profile = SphericalGaussian{0.2};
  const auto mp = map_to_protocol(params(), 1, 20.0, {{1}, {2}, {5}}, tmpl);
  for (std::size_t i = 0; i < mp.modes.size(); ++i) {
    const auto k = mp.modes.wave_vector(i);
    const double w = mp.modes.omega(i);
    PulseSchedule plain = tmpl;
    plain.coupling = mp.schedule.coupling;
    const double eta = switching_integral(plain.switching, plain.tau, w, 20.0, 1);
    const cplx weighted = bogoliubov_weight(mp.modes.wave_number(i), params()) *
                          smearing_ft(plain.smearing, k, 1);
    EXPECT_EQ(displacement_param(mp.schedule, mp.modes, i),
              displacement_from_transforms(plain, w, eta, weighted));
  }
}

TEST(MapToProtocol, ThermalPipelineMatchesClosedForm) {
  const BecParams p = params();
  PulseSchedule tmpl;
  tmpl.tau = 2.0;
  tmpl.segments = 4;
  const auto mp = map_to_protocol(p, 1, 10.0, {{1}}, tmpl);
  const GaussianFieldState st = GaussianFieldState::thermal(mp.modes, 2.0);
  const double n = 1.0 / std::expm1(2.0 * mp.modes.omega(0));
  for (double tau : {0.3, 0.9, 1.7, 2.5}) {
    PulseSchedule s = mp.schedule;
    s.tau = tau;
    const DisplacementVector xi = displacement_vector(s, mp.modes);
    EXPECT_NEAR(char_analytic(st, xi).real(), std::exp(-0.5 * (2.0 * n + 1.0) * std::norm(xi[0])),
                1e-15);
    // The same displacement comes out of the Fock-space evolution.
    const auto check = verify_displacement_identity(s, mp.modes, 0, 40);
    EXPECT_LE(check.defect, 1e-10);
  }
}

}  // namespace
}  // namespace cftomo
