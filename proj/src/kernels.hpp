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

// Hot loops shared by the public modules. Every kernel has an OpenMP version
// (kernels_omp.cpp) and a plain serial version (kernels_serial.cpp) that is
// kept as the reference the tests and benchmarks compare against.

#pragma once

#include <vector>

#include "trapwalk/coins.hpp"
#include "trapwalk/numeric.hpp"
#include "trapwalk/spectral.hpp"

namespace trapwalk::kernels {

/// Cells sharing one constant eigenphase.
using FlatBand = std::vector<AmplitudeCell>;

/// Brillouin-zone average of the origin block of each flat-band projector,
/// squared and summed over bands, on an n x n cell-centered grid.
Matrix4 origin_weight_omp(const std::vector<FlatBand> &bands, int n);
Matrix4 origin_weight_serial(const std::vector<FlatBand> &bands, int n);

/// Fill S for every off-diagonal grid point of a prepared sweep.
void area_sweep_omp(AreaSweep &sweep);
void area_sweep_serial(AreaSweep &sweep);

/// One walk step on a dense (2r+1)^2 x 4 window, `out` on a (2r+3)^2 x 4
/// window. Layout: ((y + r) * (2r + 1) + (x + r)) * 4 + c.
void walk_step_omp(const std::vector<Complex> &in, int radius, const Matrix4 &coin,
                   std::vector<Complex> &out);
void walk_step_serial(const std::vector<Complex> &in, int radius, const Matrix4 &coin,
                      std::vector<Complex> &out);

/// Projector onto span of the columns of `vectors` evaluated at one k.
Matrix4 band_projector(const std::vector<Vector4> &vectors);

/// psi(k) for a cell: (a + c y, b + e x, y (d + g x), x (f + h y)).
Vector4 cell_symbol(const AmplitudeCell &cell, Complex x, Complex y);

double sweep_area(double delta1, double delta2);

}  // namespace trapwalk::kernels
