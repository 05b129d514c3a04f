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

#include <iosfwd>
#include <string>
#include <vector>

#include "cftomo/io.hpp"

namespace cftomo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

void cmd_manifold(const RunConfig& config, std::ostream& out);
void cmd_chi_scan(const RunConfig& config, std::ostream& out);
void cmd_simulate(const RunConfig& config, std::ostream& out);
void cmd_wigner(const RunConfig& config, std::ostream& out);
void cmd_moments(const RunConfig& config, std::ostream& out);
/// Returns true when every oracle record passed.
bool cmd_oracle_check(const RunConfig& config, std::ostream& out);
void cmd_bec_map(const RunConfig& config, std::ostream& out);

/// Full command line front-end. Output goes to the configured file, or to
/// `out` when none is set; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cftomo
