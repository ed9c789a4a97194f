// Copyright 2026 The trapwalk Authors
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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trapwalk/classify.hpp"
#include "trapwalk/coins.hpp"

namespace trapwalk::cli {

struct RunConfig {
    std::string subcommand;

    /// "I", "IIa" or "IIb" (the "Type" prefix is optional).
    std::string family;
    int variant = 1;
    // Angles, radians unless `degrees` is set.
    double delta1 = 0.0, delta2 = 0.0, delta3 = 0.0;
    /// Defaults to pi when absent.
    std::optional<double> eta;
    double phi_d = 0.0, phi_e = 0.0, phi_f = 0.0, phi_g = 0.0, phi_h = 0.0;
    double delta = 0.0, varphi = 0.0, alpha = 0.0, beta = 0.0, gamma = 0.0;
    bool degrees = false;

    /// Coin JSON input for classify, escape, simulate and spectrum.
    std::string coin_path;
    /// L, D, U, R, escape, fig2, fig6 or eight comma-separated numbers.
    std::string init = "L";
    int steps = 50;
    std::vector<int> snapshots;
    int grid = 64;
    std::string figure;

    /// Output file; "-" writes to standard output.
    std::string output = "-";
    std::string out_dir = ".";
    double floor = 1e-5;

    ClassifyOptions classify;
};

/// Family parameters from the config, converted to radians.
FamilyParams family_params(const RunConfig &cfg);

/// Runs one subcommand. Module errors propagate as trapwalk::Error.
void dispatch(const RunConfig &cfg, std::ostream &out);

/// Parses argv, applies TRAPWALK_THREADS, dispatches, and turns errors into
/// an error JSON on stderr with a nonzero exit status.
int run(int argc, const char *const *argv);

}  // namespace trapwalk::cli
