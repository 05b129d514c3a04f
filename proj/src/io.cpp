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

#include "cftomo/io.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "cftomo/errors.hpp"

namespace cftomo {

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ValidationError(where + ": unknown key '" + item.key() + "'");
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(where + ": bad value for '" + key + "'");
  }
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

std::string kind_name(const ModeKind& kind) {
  if (std::holds_alternative<Vacuum>(kind)) return "vacuum";
  if (std::holds_alternative<Thermal>(kind)) return "thermal";
  return "squeezed";
}

}  // namespace

json to_json(const ModeSet& modes) {
  json j;
  j["spatial_dim"] = modes.spatial_dim();
  j["box_side"] = modes.box_side();
  if (const auto* kg = std::get_if<KleinGordon>(&modes.dispersion())) {
    j["mass"] = kg->mass;
  } else {
    const auto& b = std::get<Bogoliubov>(modes.dispersion());
    j["dispersion"] = {{"type", "bogoliubov"}, {"atom_mass", b.atom_mass}, {"g_rho0", b.g_rho0}};
  }
  return j;
}

json to_json(const GaussianFieldState& state) {
  json j = to_json(state.modes());
  json modes = json::array();
  for (std::size_t i = 0; i < state.size(); ++i) {
    json m;
    m["j"] = state.modes().index(i);
    m["kind"] = kind_name(state.kind(i));
    json params = json::object();
    if (const auto* t = std::get_if<Thermal>(&state.kind(i))) params["occupation"] = t->occupation;
    if (const auto* s = std::get_if<Squeezed>(&state.kind(i))) {
      params["r"] = s->r;
      params["phase"] = s->phase;
    }
    m["params"] = params;
    modes.push_back(m);
  }
  j["modes"] = modes;
  return j;
}

GaussianFieldState state_from_json(const json& j) {
  const std::string w = "state";
  check_keys(j, {"spatial_dim", "box_side", "mass", "dispersion", "modes"}, w);
  const int dim = get_or<int>(j, "spatial_dim", 1, w);
  const double box = get_or<double>(j, "box_side", 2.0 * std::numbers::pi, w);
  Dispersion disp = KleinGordon{get_or<double>(j, "mass", 0.0, w)};
  if (j.contains("dispersion")) {
    if (j.contains("mass")) throw ValidationError("state: give either mass or dispersion");
    const json& d = j.at("dispersion");
    const std::string type = get<std::string>(d, "type", "state.dispersion");
    if (type == "bogoliubov") {
      check_keys(d, {"type", "atom_mass", "g_rho0"}, "state.dispersion");
      disp = Bogoliubov{get<double>(d, "atom_mass", "state.dispersion"),
                        get<double>(d, "g_rho0", "state.dispersion")};
    } else {
      throw ValidationError("state.dispersion: unknown type '" + type + "'");
    }
  }
  if (!j.contains("modes") || !j.at("modes").is_array())
    throw ValidationError("state: 'modes' must be an array");
  std::vector<ModeIndex> indices;
  for (const auto& m : j.at("modes")) indices.push_back(get<ModeIndex>(m, "j", "state.modes"));
  ModeSet modes(dim, box, disp, indices);

  std::vector<ModeKind> kinds;
  std::size_t i = 0;
  for (const auto& m : j.at("modes")) {
    const std::string kw = "state.modes[" + std::to_string(i) + "]";
    check_keys(m, {"j", "kind", "params"}, kw);
    const std::string kind = get<std::string>(m, "kind", kw);
    const json params = m.contains("params") ? m.at("params") : json::object();
    const std::string pw = kw + ".params";
    if (kind == "vacuum") {
      check_keys(params, {}, pw);
      kinds.emplace_back(Vacuum{});
    } else if (kind == "thermal") {
      check_keys(params, {"occupation", "beta"}, pw);
      if (params.contains("occupation") == params.contains("beta"))
        throw ValidationError(pw + ": thermal mode needs exactly one of occupation, beta");
      const double n = params.contains("beta")
                           ? thermal_occupation(get<double>(params, "beta", pw), modes.omega(i))
                           : get<double>(params, "occupation", pw);
      kinds.emplace_back(Thermal{n});
    } else if (kind == "squeezed") {
      check_keys(params, {"r", "phase"}, pw);
      kinds.emplace_back(
          Squeezed{get<double>(params, "r", pw), get_or<double>(params, "phase", 0.0, pw)});
    } else {
      throw ValidationError(kw + ": unknown kind '" + kind + "'");
    }
    ++i;
  }
  return GaussianFieldState(std::move(modes), std::move(kinds));
}

json to_json(const SmearingFunction& f) {
  json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SphericalGaussian>) {
          j["type"] = "gaussian";
          j["sigma"] = p.sigma;
        } else if constexpr (std::is_same_v<T, DeltaSmearing>) {
          j["type"] = "delta";
        } else {
          j["type"] = "radial";
          j["radius"] = p.radius;
          j["value"] = p.value;
        }
      },
      f.profile);
  if (f.spectral_weight)
    j["bogoliubov_weight"] = {{"atom_mass", f.spectral_weight->atom_mass},
                              {"g_rho0", f.spectral_weight->g_rho0}};
  return j;
}

SmearingFunction smearing_from_json(const json& j) {
  const std::string w = "schedule.smearing";
  SmearingFunction f;
  const std::string type = get<std::string>(j, "type", w);
  if (type == "delta") {
    check_keys(j, {"type", "bogoliubov_weight"}, w);
    f.profile = DeltaSmearing{};
  } else if (type == "gaussian") {
    check_keys(j, {"type", "sigma", "bogoliubov_weight"}, w);
    const double sigma = get<double>(j, "sigma", w);
    if (!(sigma > 0.0)) throw ValidationError(w + ": sigma must be positive");
    f.profile = SphericalGaussian{sigma};
  } else if (type == "radial") {
    check_keys(j, {"type", "radius", "value", "bogoliubov_weight"}, w);
    f.profile = RadialProfile{get<std::vector<double>>(j, "radius", w),
                              get<std::vector<double>>(j, "value", w)};
  } else {
    throw ValidationError(w + ": unknown type '" + type + "'");
  }
  if (j.contains("bogoliubov_weight")) {
    const json& b = j.at("bogoliubov_weight");
    check_keys(b, {"atom_mass", "g_rho0"}, w + ".bogoliubov_weight");
    f.spectral_weight = BogoliubovWeight{get<double>(b, "atom_mass", w), get<double>(b, "g_rho0", w)};
  }
  return f;
}

json to_json(const SwitchingFunction& eta) {
  json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantSwitching>) {
          j["type"] = "constant";
          j["value"] = s.value;
        } else if constexpr (std::is_same_v<T, GaussianSwitching>) {
          j["type"] = "gaussian";
          j["center"] = s.center;
          j["width"] = s.width;
        } else {
          j["type"] = "tabulated";
          j["time"] = s.time;
          j["value"] = s.value;
        }
      },
      eta);
  return j;
}

SwitchingFunction switching_from_json(const json& j) {
  const std::string w = "schedule.switching";
  const std::string type = get<std::string>(j, "type", w);
  if (type == "constant") {
    check_keys(j, {"type", "value"}, w);
    return ConstantSwitching{get_or<double>(j, "value", 1.0, w)};
  }
  if (type == "gaussian") {
    check_keys(j, {"type", "center", "width"}, w);
    const double width = get<double>(j, "width", w);
    if (!(width > 0.0)) throw ValidationError(w + ": width must be positive");
    return GaussianSwitching{get<double>(j, "center", w), width};
  }
  if (type == "window") {
    check_keys(j, {"type", "total_time"}, w);
    const double t = get<double>(j, "total_time", w);
    if (!(t > 0.0)) throw ValidationError(w + ": total_time must be positive");
    return gaussian_window(t);
  }
  if (type == "tabulated") {
    check_keys(j, {"type", "time", "value"}, w);
    return TabulatedSwitching{get<std::vector<double>>(j, "time", w),
                              get<std::vector<double>>(j, "value", w)};
  }
  throw ValidationError(w + ": unknown type '" + type + "'");
}

json to_json(const PulseSchedule& s) {
  json j;
  j["lambda"] = s.coupling;
  j["tau"] = s.tau;
  j["N"] = s.segments;
  j["smearing"] = to_json(s.smearing);
  j["switching"] = to_json(s.switching);
  return j;
}

PulseSchedule schedule_from_json(const json& j) {
  const std::string w = "schedule";
  check_keys(j, {"lambda", "tau", "N", "smearing", "switching"}, w);
  PulseSchedule s;
  s.coupling = get_or<double>(j, "lambda", s.coupling, w);
  s.tau = get_or<double>(j, "tau", s.tau, w);
  s.segments = get_or<int>(j, "N", s.segments, w);
  if (j.contains("smearing")) s.smearing = smearing_from_json(j.at("smearing"));
  if (j.contains("switching")) s.switching = switching_from_json(j.at("switching"));
  s.validate();
  return s;
}

json to_json(const BecParams& p) {
  return json{{"rho0", p.rho0}, {"g_g", p.g_g},   {"g_e", p.g_e},
              {"g_rho0", p.g_rho0}, {"m_B", p.m_B}, {"omega0", p.omega0}};
}

BecParams bec_params_from_json(const json& j) {
  const std::string w = "bec.params";
  check_keys(j, {"rho0", "g_g", "g_e", "g_rho0", "m_B", "omega0"}, w);
  BecParams p;
  p.rho0 = get_or<double>(j, "rho0", p.rho0, w);
  p.g_g = get_or<double>(j, "g_g", p.g_g, w);
  p.g_e = get_or<double>(j, "g_e", p.g_e, w);
  p.g_rho0 = get_or<double>(j, "g_rho0", p.g_rho0, w);
  p.m_B = get_or<double>(j, "m_B", p.m_B, w);
  p.omega0 = get_or<double>(j, "omega0", p.omega0, w);
  p.validate();
  return p;
}

json to_json(const RunConfig& c) {
  json j;
  j["state"] = to_json(c.state);
  j["schedule"] = to_json(c.schedule);
  j["grid"] = {{"half", c.grid.half}, {"step", c.grid.step}};
  j["shots"] = c.shots;
  j["theta"] = c.theta;
  j["seed"] = c.seed;
  j["output"] = c.output;
  j["threads"] = c.threads;
  j["timestamp"] = c.timestamp;
  j["manifold"] = {{"segments", c.manifold.segments},
                   {"mode", c.manifold.mode},
                   {"tau_max", c.manifold.tau_max},
                   {"tau_points", c.manifold.tau_points}};
  j["chi_scan"] = {{"source", c.chi_scan.source}, {"sampled", c.chi_scan.sampled}};
  j["wigner"] = {{"half", c.wigner.half}, {"step", c.wigner.step}, {"sampled", c.wigner.sampled}};
  j["moments"] = {{"mode", c.moments.mode}, {"p", c.moments.p},        {"q", c.moments.q},
                  {"h", c.moments.h},       {"sampled", c.moments.sampled}};
  j["oracle"] = {{"draws", c.oracle.draws},
                 {"dim", c.oracle.dim},
                 {"seed", c.oracle.seed},
                 {"max_coupling", c.oracle.max_coupling},
                 {"max_segments", c.oracle.max_segments}};
  j["bec"] = {{"params", to_json(c.bec.params)},
              {"spatial_dim", c.bec.spatial_dim},
              {"box_side", c.bec.box_side},
              {"modes", c.bec.indices}};
  return j;
}

RunConfig config_from_json(const json& j) {
  check_keys(j, {"state", "schedule", "grid", "shots", "theta", "seed", "output", "threads",
                 "timestamp", "manifold", "chi_scan", "wigner", "moments", "oracle", "bec"},
             "config");
  RunConfig c;
  const std::string w = "config";
  if (j.contains("state")) c.state = state_from_json(j.at("state"));
  if (j.contains("schedule")) c.schedule = schedule_from_json(j.at("schedule"));
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, {"half", "step"}, "grid");
    c.grid.half = get_or<int>(g, "half", c.grid.half, "grid");
    c.grid.step = get_or<double>(g, "step", c.grid.step, "grid");
  }
  c.shots = get_or<std::uint64_t>(j, "shots", c.shots, w);
  c.theta = get_or<double>(j, "theta", c.theta, w);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed, w);
  c.output = get_or<std::string>(j, "output", c.output, w);
  c.threads = get_or<int>(j, "threads", c.threads, w);
  c.timestamp = get_or<bool>(j, "timestamp", c.timestamp, w);
  if (j.contains("manifold")) {
    const json& m = j.at("manifold");
    check_keys(m, {"segments", "mode", "tau_max", "tau_points"}, "manifold");
    c.manifold.segments = get_or<std::vector<int>>(m, "segments", c.manifold.segments, "manifold");
    c.manifold.mode = get_or<std::size_t>(m, "mode", c.manifold.mode, "manifold");
    c.manifold.tau_max = get_or<double>(m, "tau_max", c.manifold.tau_max, "manifold");
    c.manifold.tau_points = get_or<int>(m, "tau_points", c.manifold.tau_points, "manifold");
  }
  if (j.contains("chi_scan")) {
    const json& m = j.at("chi_scan");
    check_keys(m, {"source", "sampled"}, "chi_scan");
    c.chi_scan.source = get_or<std::string>(m, "source", c.chi_scan.source, "chi_scan");
    c.chi_scan.sampled = get_or<bool>(m, "sampled", c.chi_scan.sampled, "chi_scan");
  }
  if (j.contains("wigner")) {
    const json& m = j.at("wigner");
    check_keys(m, {"half", "step", "sampled"}, "wigner");
    c.wigner.half = get_or<int>(m, "half", c.wigner.half, "wigner");
    c.wigner.step = get_or<double>(m, "step", c.wigner.step, "wigner");
    c.wigner.sampled = get_or<bool>(m, "sampled", c.wigner.sampled, "wigner");
  }
  if (j.contains("moments")) {
    const json& m = j.at("moments");
    check_keys(m, {"mode", "p", "q", "h", "sampled"}, "moments");
    c.moments.mode = get_or<std::size_t>(m, "mode", c.moments.mode, "moments");
    c.moments.p = get_or<int>(m, "p", c.moments.p, "moments");
    c.moments.q = get_or<int>(m, "q", c.moments.q, "moments");
    c.moments.h = get_or<double>(m, "h", c.moments.h, "moments");
    c.moments.sampled = get_or<bool>(m, "sampled", c.moments.sampled, "moments");
  }
  if (j.contains("oracle")) {
    const json& m = j.at("oracle");
    check_keys(m, {"draws", "dim", "seed", "max_coupling", "max_segments"}, "oracle");
    c.oracle.draws = get_or<int>(m, "draws", c.oracle.draws, "oracle");
    c.oracle.dim = get_or<int>(m, "dim", c.oracle.dim, "oracle");
    c.oracle.seed = get_or<std::uint64_t>(m, "seed", c.oracle.seed, "oracle");
    c.oracle.max_coupling = get_or<double>(m, "max_coupling", c.oracle.max_coupling, "oracle");
    c.oracle.max_segments = get_or<int>(m, "max_segments", c.oracle.max_segments, "oracle");
  }
  if (j.contains("bec")) {
    const json& m = j.at("bec");
    check_keys(m, {"params", "spatial_dim", "box_side", "modes"}, "bec");
    if (m.contains("params")) c.bec.params = bec_params_from_json(m.at("params"));
    c.bec.spatial_dim = get_or<int>(m, "spatial_dim", c.bec.spatial_dim, "bec");
    c.bec.box_side = get_or<double>(m, "box_side", c.bec.box_side, "bec");
    c.bec.indices = get_or<std::vector<ModeIndex>>(m, "modes", c.bec.indices, "bec");
  }
  if (c.shots == 0) throw ValidationError("config: shots must be >= 1");
  if (c.threads < 1) throw ValidationError("config: threads must be >= 1");
  if (c.grid.half < 1) throw ValidationError("grid: half must be >= 1");
  if (!(c.grid.step > 0.0)) throw ValidationError("grid: step must be positive");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json to_json(const OracleRecord& r) {
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  json j;
  j["check"] = r.check;
  j["inputs"] = inputs;
  j["dim"] = r.dim;
  j["defect"] = std::isfinite(r.defect) ? json(r.defect) : json(nullptr);
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_header(std::ostream& os, const std::string& command, const RunConfig& config,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
  os << "# cftomo " << command << "\n";
  os << "# seed: " << config.seed << "\n";
  if (config.timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# timestamp: " << buf << "\n";
  }
  for (const auto& [k, v] : extra) os << "# " << k << ": " << v << "\n";
  os << "# config: " << to_json(config).dump() << "\n";
}

void write_chi_grid(std::ostream& os, const ChiGrid& grid) {
  for (int m = 1; m <= grid.num_modes(); ++m) os << "re_xi" << m << ",im_xi" << m << ",";
  os << "re_chi,im_chi,abs_chi,std_error\n";
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (!grid.present(f)) continue;
    const DisplacementVector xi = grid.displacement(f);
    for (std::size_t m = 0; m < xi.size(); ++m)
      os << format_double(xi[m].real()) << "," << format_double(xi[m].imag()) << ",";
    const cplx v = grid.value(f);
    os << format_double(v.real()) << "," << format_double(v.imag()) << ","
       << format_double(std::abs(v)) << "," << format_double(grid.std_error(f)) << "\n";
  }
}

void write_wigner_grid(std::ostream& os, const WignerGrid& grid) {
  for (int m = 1; m <= grid.num_modes; ++m) os << "x" << m << ",p" << m << ",";
  os << "W\n";
  for (std::size_t f = 0; f < grid.size(); ++f) {
    for (int idx : grid.multi_index(f)) os << format_double(grid.coordinate(idx)) << ",";
    os << format_double(grid.values[f]) << "\n";
  }
}

}  // namespace cftomo
