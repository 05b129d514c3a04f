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

#include "cftomo/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "cftomo/errors.hpp"

namespace cftomo {

namespace {

using std::numbers::pi;

std::vector<double> tau_grid(const RunConfig& c, double omega) {
  if (c.manifold.tau_points < 1) throw ValidationError("manifold: tau_points must be >= 1");
  const double tau_max = c.manifold.tau_max > 0.0 ? c.manifold.tau_max : 2.0 * pi / omega;
  std::vector<double> taus(static_cast<std::size_t>(c.manifold.tau_points));
  for (std::size_t i = 0; i < taus.size(); ++i)
    taus[i] = tau_max * static_cast<double>(i + 1) / static_cast<double>(taus.size());
  return taus;
}

int field_modes(const RunConfig& c) {
  const auto n = static_cast<int>(c.state.size());
  if (n < 1 || n > 2) throw ValidationError("grid commands support 1 or 2 field modes");
  return n;
}

ChiGrid build_grid(const RunConfig& c, bool sampled) {
  field_modes(c);
  if (!sampled) return make_exact_grid(c.state, c.grid.half, c.grid.step);
  return hermitian_fill(sample_grid(c.state, c.grid.half, c.grid.step, c.theta, c.shots, c.seed,
                                    true, c.threads));
}

std::string f(double v) { return format_double(v); }

std::string join_index(const ModeIndex& j) {
  std::string s;
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ";" : "") + std::to_string(j[i]);
  return s;
}

void write_xi_columns(std::ostream& out, std::size_t modes) {
  for (std::size_t m = 1; m <= modes; ++m) out << ",re_xi" << m << ",im_xi" << m;
}

void write_xi(std::ostream& out, const DisplacementVector& xi) {
  for (std::size_t m = 0; m < xi.size(); ++m) out << "," << f(xi[m].real()) << "," << f(xi[m].imag());
}

}  // namespace

void cmd_manifold(const RunConfig& c, std::ostream& out) {
  const ModeSet& modes = c.state.modes();
  if (c.manifold.mode >= modes.size()) throw ValidationError("manifold: mode out of range");
  const double omega = modes.omega(c.manifold.mode);
  const auto taus = tau_grid(c, omega);
  const auto points =
      reachable_manifold(c.schedule, modes, c.manifold.mode, c.manifold.segments, taus);
  write_header(out, "manifold", c, {{"omega", f(omega)}});
  out << "N,tau,omega_tau,re_xi,im_xi,abs_xi\n";
  for (const auto& p : points)
    out << p.segments << "," << f(p.tau) << "," << f(omega * p.tau) << "," << f(p.xi.real()) << ","
        << f(p.xi.imag()) << "," << f(std::abs(p.xi)) << "\n";
}

void cmd_chi_scan(const RunConfig& c, std::ostream& out) {
  const bool sampled = c.chi_scan.sampled;
  if (c.chi_scan.source == "grid") {
    const ChiGrid grid = build_grid(c, sampled);
    write_header(out, "chi-scan", c,
                 {{"source", "grid"}, {"mode", sampled ? "sampled" : "exact"}});
    write_chi_grid(out, grid);
    return;
  }
  if (c.chi_scan.source != "manifold")
    throw ValidationError("chi_scan: source must be 'grid' or 'manifold'");
  const ModeSet& modes = c.state.modes();
  const auto taus = tau_grid(c, modes.omega(c.manifold.mode));
  write_header(out, "chi-scan", c,
               {{"source", "manifold"}, {"mode", sampled ? "sampled" : "exact"}});
  out << "N,tau";
  write_xi_columns(out, modes.size());
  out << ",re_chi,im_chi,abs_chi,std_error\n";
  PulseSchedule s = c.schedule;
  std::uint64_t stream = 0;
  for (int n : c.manifold.segments) {
    s.segments = n;
    for (double tau : taus) {
      s.tau = tau;
      const DisplacementVector xi = displacement_vector(s, modes);
      cplx chi = char_analytic(c.state, xi);
      double se = 0.0;
      if (sampled) {
        const ReadoutRecord r = read_out(c.state, xi, c.theta, c.shots, c.seed, stream);
        chi = r.chi_est;
        se = r.chi_stderr;
      }
      ++stream;
      out << n << "," << f(tau);
      write_xi(out, xi);
      out << "," << f(chi.real()) << "," << f(chi.imag()) << "," << f(std::abs(chi)) << ","
          << f(se) << "\n";
    }
  }
}

void cmd_simulate(const RunConfig& c, std::ostream& out) {
  const ModeSet& modes = c.state.modes();
  const auto taus = tau_grid(c, modes.omega(c.manifold.mode));
  write_header(out, "simulate", c, {{"shots_per_basis", std::to_string(c.shots)}});
  out << "N,tau";
  write_xi_columns(out, modes.size());
  out << ",theta,M,est_sx,sx_err,est_sy,sy_err,re_chi,im_chi,chi_stderr,re_chi_exact,"
         "im_chi_exact,seed,stream\n";
  PulseSchedule s = c.schedule;
  std::uint64_t stream = 0;
  for (int n : c.manifold.segments) {
    s.segments = n;
    for (double tau : taus) {
      s.tau = tau;
      const DisplacementVector xi = displacement_vector(s, modes);
      const ReadoutRecord r = read_out(c.state, xi, c.theta, c.shots, c.seed, stream);
      const cplx exact = char_analytic(c.state, xi);
      out << n << "," << f(tau);
      write_xi(out, xi);
      out << "," << f(c.theta) << "," << c.shots << "," << f(r.sx.mean) << "," << f(r.sx.std_error) << "," << f(r.sy.mean) << ","
          << f(r.sy.std_error) << "," << f(r.chi_est.real()) << "," << f(r.chi_est.imag()) << ","
          << f(r.chi_stderr) << "," << f(exact.real()) << "," << f(exact.imag()) << "," << c.seed
          << "," << stream << "\n";
      ++stream;
    }
  }
}

void cmd_wigner(const RunConfig& c, std::ostream& out) {
  const ChiGrid grid = build_grid(c, c.wigner.sampled);
  const WignerGrid w = wigner_transform(grid, WignerOptions{c.wigner.half, c.wigner.step});
  const GaussianFit fit = gaussian_fit(grid);
  std::vector<std::pair<std::string, std::string>> extra{
      {"mode", c.wigner.sampled ? "sampled" : "exact"},
      {"integral", f(w.integral())},
      {"normalization", f(w.normalization)},
      {"imag_residual", f(w.imag_residual)}};
  for (int a = 0; a < 2 * w.num_modes; ++a) {
    const std::string name = (a % 2 ? "p" : "x") + std::to_string(a / 2 + 1);
    extra.emplace_back("mean_" + name, f(w.mean(a)));
    extra.emplace_back("variance_" + name, f(w.variance(a)));
  }
  for (std::size_t m = 0; m < fit.occupations.size(); ++m)
    extra.emplace_back("fit_occupation_" + std::to_string(m + 1), f(fit.occupations[m]));
  if (!fit.diagnostic.empty()) extra.emplace_back("fit_diagnostic", fit.diagnostic);
  write_header(out, "wigner", c, extra);
  write_wigner_grid(out, w);
}

void cmd_moments(const RunConfig& c, std::ostream& out) {
  const int n = static_cast<int>(c.state.size());
  if (c.moments.mode >= c.state.size()) throw ValidationError("moments: mode out of range");
  const int mode = static_cast<int>(c.moments.mode);
  MomentEstimate est;
  if (c.moments.sampled) {
    est = moments_fd(build_grid(c, true), mode, c.moments.p, c.moments.q, c.moments.h);
  } else {
    const GaussianFieldState& st = c.state;
    est = moments_fd([&st](const DisplacementVector& xi) { return char_analytic(st, xi); }, n,
                     mode, c.moments.p, c.moments.q, c.moments.h);
  }
  const cplx exact = moments_analytic(c.state, c.moments.mode, c.moments.p, c.moments.q);
  std::vector<std::pair<std::string, std::string>> extra{
      {"mode", c.moments.sampled ? "sampled" : "exact"}};
  if (!est.diagnostic.empty()) extra.emplace_back("diagnostic", est.diagnostic);
  write_header(out, "moments", c, extra);
  out << "mode,p,q,h,re_value,im_value,std_error,noise_limited,re_analytic,im_analytic\n";
  out << mode << "," << c.moments.p << "," << c.moments.q << "," << f(c.moments.h) << ","
      << f(est.value.real()) << "," << f(est.value.imag()) << "," << f(est.std_error) << ","
      << (est.noise_limited ? 1 : 0) << "," << f(exact.real()) << "," << f(exact.imag()) << "\n";
}

bool cmd_oracle_check(const RunConfig& c, std::ostream& out) {
  const auto records = run_oracle_suite(c.oracle);
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.passed ? 0 : 1;
  write_header(out, "oracle-check", c,
               {{"records", std::to_string(records.size())}, {"failed", std::to_string(failed)}});
  for (const auto& r : records) out << to_json(r).dump() << "\n";
  return failed == 0;
}

void cmd_bec_map(const RunConfig& c, std::ostream& out) {
  const MappedProtocol mp =
      map_to_protocol(c.bec.params, c.bec.spatial_dim, c.bec.box_side, c.bec.indices, c.schedule);
  write_header(out, "bec-map", c,
               {{"no_signal", mp.no_signal ? "true" : "false"},
                {"healing_length", f(c.bec.params.healing_length())},
                {"sound_speed", f(c.bec.params.sound_speed())},
                {"mapped_modes", to_json(mp.modes).dump()},
                {"mapped_schedule", to_json(mp.schedule).dump()}});
  out << "j,k,omega,weight,re_xi,im_xi,abs_xi\n";
  for (std::size_t i = 0; i < mp.modes.size(); ++i) {
    const double k = mp.modes.wave_number(i);
    const cplx xi = displacement_param(mp.schedule, mp.modes, i);
    out << join_index(mp.modes.index(i)) << "," << f(k) << "," << f(mp.modes.omega(i)) << ","
        << f(bogoliubov_weight(k, c.bec.params)) << "," << f(xi.real()) << "," << f(xi.imag())
        << "," << f(std::abs(xi)) << "\n";
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cftomo: characteristic-function tomography of Gaussian field states"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<double> theta;
  std::optional<std::string> output;
  std::optional<int> threads;
  bool timestamp = false;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"manifold", "reachable (N, tau, xi) curves"},
      {"chi-scan", "chi over a grid or along the manifold"},
      {"simulate", "shot-sampled Ramsey readout along the manifold"},
      {"wigner", "Wigner function from a chi grid"},
      {"moments", "symmetric-ordered moment from finite differences"},
      {"oracle-check", "truncated Fock-space cross checks"},
      {"bec-map", "condensate impurity mapped onto the pulse protocol"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--shots", shots, "shots per Pauli basis")->check(CLI::PositiveNumber);
    sub->add_option("--theta", theta, "initial qubit rotation angle");
    sub->add_option("-o,--output", output, "output file (default stdout)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timestamp", timestamp, "add a timestamp header line");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed) c.seed = *seed;
    if (shots) c.shots = *shots;
    if (theta) c.theta = *theta;
    if (output) c.output = *output;
    if (threads) c.threads = *threads;
    if (timestamp) c.timestamp = true;

    std::ostringstream buf;
    bool ok = true;
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "manifold") cmd_manifold(c, buf);
    else if (cmd == "chi-scan") cmd_chi_scan(c, buf);
    else if (cmd == "simulate") cmd_simulate(c, buf);
    else if (cmd == "wigner") cmd_wigner(c, buf);
    else if (cmd == "moments") cmd_moments(c, buf);
    else if (cmd == "oracle-check") ok = cmd_oracle_check(c, buf);
    else cmd_bec_map(c, buf);

    if (c.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(c.output, std::ios::binary);
      if (!file) throw ValidationError("cannot write output file '" + c.output + "'");
      file << buf.str();
    }
    if (!ok) {
      err << "error: oracle checks failed\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const NumericalCheckError& e) {
    err << "numerical check failed: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace cftomo
