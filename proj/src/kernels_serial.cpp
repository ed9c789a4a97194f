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

// Straight-line versions of the hot loops. The walk step here follows the
// operator definition literally: apply the coin everywhere, then scatter each
// component one site along its direction.

#include <cmath>

#include "kernels.hpp"

namespace trapwalk::kernels {

Vector4 cell_symbol(const AmplitudeCell &z, Complex x, Complex y) {
    Vector4 v;
    v << z.a + z.c * y, z.b + z.e * x, y * (z.d + z.g * x), x * (z.f + z.h * y);
    return v;
}

Matrix4 band_projector(const std::vector<Vector4> &vectors) {
    // Modified Gram-Schmidt; vectors that vanish at this k are skipped.
    std::vector<Vector4> basis;
    for (Vector4 v : vectors) {
        for (const Vector4 &b : basis) v -= b * b.dot(v);
        const double n = v.norm();
        if (n > 1e-12) basis.push_back(v / n);
    }
    Matrix4 p = Matrix4::Zero();
    for (const Vector4 &b : basis) p += b * b.adjoint();
    return p;
}

Matrix4 origin_weight_serial(const std::vector<FlatBand> &bands, int n) {
    std::vector<Matrix4> q(bands.size(), Matrix4::Zero());
    for (int i = 0; i < n; ++i) {
        const Complex x = unit_phase(2 * kPi * (i + 0.5) / n);
        for (int j = 0; j < n; ++j) {
            const Complex y = unit_phase(2 * kPi * (j + 0.5) / n);
            for (size_t b = 0; b < bands.size(); ++b) {
                std::vector<Vector4> vs;
                for (const AmplitudeCell &cell : bands[b]) vs.push_back(cell_symbol(cell, x, y));
                q[b] += band_projector(vs);
            }
        }
    }
    Matrix4 w = Matrix4::Zero();
    const double inv = 1.0 / (static_cast<double>(n) * n);
    for (const Matrix4 &m : q) {
        const Matrix4 avg = m * inv;
        w += avg * avg;
    }
    return w;
}

void area_sweep_serial(AreaSweep &sweep) {
    const int n = sweep.n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            sweep.S[static_cast<size_t>(i) * n + j] = sweep_area(sweep.delta1[i], sweep.delta2[j]);
        }
    }
}

void walk_step_serial(const std::vector<Complex> &in, int radius, const Matrix4 &coin,
                      std::vector<Complex> &out) {
    const int w_in = 2 * radius + 1;
    const int r_out = radius + 1;
    const int w_out = 2 * r_out + 1;

    std::vector<Complex> coined(in.size());
    for (int s = 0; s < w_in * w_in; ++s) {
        Vector4 v;
        for (int c = 0; c < 4; ++c) v(c) = in[static_cast<size_t>(s) * 4 + c];
        const Vector4 cv = coin * v;
        for (int c = 0; c < 4; ++c) coined[static_cast<size_t>(s) * 4 + c] = cv(c);
    }

    out.assign(static_cast<size_t>(w_out) * w_out * 4, Complex(0.0));
    const int dx[4] = {-1, 0, 0, 1};
    const int dy[4] = {0, -1, 1, 0};
    for (int y = -radius; y <= radius; ++y) {
        for (int x = -radius; x <= radius; ++x) {
            const size_t src = (static_cast<size_t>(y + radius) * w_in + (x + radius)) * 4;
            for (int c = 0; c < 4; ++c) {
                const int nx = x + dx[c], ny = y + dy[c];
                const size_t dst = (static_cast<size_t>(ny + r_out) * w_out + (nx + r_out)) * 4;
                out[dst + c] = coined[src + c];
            }
        }
    }
}

}  // namespace trapwalk::kernels
