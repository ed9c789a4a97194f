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

#include <optional>
#include <string>

#include "json.hpp"
#include "trapwalk/classify.hpp"
#include "trapwalk/coins.hpp"
#include "trapwalk/spectral.hpp"
#include "trapwalk/walk.hpp"

namespace trapwalk::io {

using nlohmann::json;

json complex_to_json(Complex z);
Complex complex_from_json(const json &j);

json params_to_json(const FamilyParams &p);
FamilyParams params_from_json(const std::string &family, const json &j);

/// {"basis": ["L","D","U","R"], "matrix": [[[re, im], ...], ...], "family"?, "params"?}
json coin_to_json(const Matrix4 &coin, const std::optional<FamilyParams> &params = std::nullopt);
Matrix4 coin_from_json(const json &j);

json classification_to_json(const ClassificationResult &r);
json escaping_to_json(const MatrixX &basis);
json region_to_json(const SpreadRegion &r);
json error_to_json(const Error &e);

std::string distribution_csv(const Distribution &d, double floor = 0.0);
std::string trajectory_csv(const Trajectory &t);
std::string spectrum_csv(const std::vector<SpectrumSample> &samples);
std::string area_sweep_csv(const AreaSweep &sweep);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string &path, const std::string &content);
std::string read_file(const std::string &path);

}  // namespace trapwalk::io
