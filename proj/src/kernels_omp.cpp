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

#include <omp.h>

#include <cmath>

#include "kernels.hpp"

namespace trapwalk::kernels {

Matrix4 origin_weight_omp(const std::vector<FlatBand> &bands, int n) {
    const size_t nb = bands.size();
    std::vector<Matrix4> q(nb, Matrix4::Zero());

#pragma omp parallel
    {
        std::vector<Matrix4> local(nb, Matrix4::Zero());
        std::vector<Vector4> vs;
#pragma omp for schedule(static) nowait
        for (int i = 0; i < n; ++i) {
            const Complex x = unit_phase(2 * kPi * (i + 0.5) / n);
            for (int j = 0; j < n; ++j) {
                const Complex y = unit_phase(2 * kPi * (j + 0.5) / n);
                for (size_t b = 0; b < nb; ++b) {
                    vs.clear();
                    for (const AmplitudeCell &cell : bands[b]) {
                        vs.push_back(cell_symbol(cell, x, y));
                    }
                    local[b] += band_projector(vs);
                }
            }
        }
#pragma omp critical(trapwalk_origin_weight)
        for (size_t b = 0; b < nb; ++b) q[b] += local[b];
    }

    Matrix4 w = Matrix4::Zero();
    const double inv = 1.0 / (static_cast<double>(n) * n);
    for (const Matrix4 &m : q) {
        const Matrix4 avg = m * inv;
        w += avg * avg;
    }
    return w;
}

void area_sweep_omp(AreaSweep &sweep) {
    const int n = sweep.n;
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            sweep.S[static_cast<size_t>(i) * n + j] = sweep_area(sweep.delta1[i], sweep.delta2[j]);
        }
    }
}

void walk_step_omp(const std::vector<Complex> &in, int radius, const Matrix4 &coin,
                   std::vector<Complex> &out) {
    // Gather form of shift-after-coin: each output component reads the coined
    // state of the one neighbour it came from, so rows are independent.
    const int w_in = 2 * radius + 1;
    const int r_out = radius + 1;
    const int w_out = 2 * r_out + 1;
    out.resize(static_cast<size_t>(w_out) * w_out * 4);

    Complex cm[4][4];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) cm[r][c] = coin(r, c);
    }
    const Complex *src = in.data();
    Complex *dst = out.data();

    const auto coined = [&](int x, int y, int row) -> Complex {
        if (x < -radius || x > radius || y < -radius || y > radius) return 0.0;
        const Complex *v = src + (static_cast<size_t>(y + radius) * w_in + (x + radius)) * 4;
        return cm[row][0] * v[0] + cm[row][1] * v[1] + cm[row][2] * v[2] + cm[row][3] * v[3];
    };

#pragma omp parallel for schedule(static)
    for (int y = -r_out; y <= r_out; ++y) {
        Complex *row = dst + static_cast<size_t>(y + r_out) * w_out * 4;
        for (int x = -r_out; x <= r_out; ++x) {
            Complex *o = row + static_cast<size_t>(x + r_out) * 4;
            o[L] = coined(x + 1, y, L);
            o[D] = coined(x, y + 1, D);
            o[U] = coined(x, y - 1, U);
            o[R] = coined(x - 1, y, R);
        }
    }
}

}  // namespace trapwalk::kernels
