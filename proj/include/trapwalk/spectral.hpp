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

#include <vector>

#include "trapwalk/coins.hpp"
#include "trapwalk/numeric.hpp"

namespace trapwalk {

struct MomentumPoint {
    double kx = 0.0;
    double ky = 0.0;
};

/// diag(e^{-i kx}, e^{-i ky}, e^{i ky}, e^{i kx})
Matrix4 shift_symbol(MomentumPoint k);

/// U(k) = S(k) C.
Matrix4 momentum_operator(const Matrix4 &coin, MomentumPoint k);

enum class DispersionClass { TwoD, OneD };

/// Continuous bands are e^{i beta} e^{+-i omega(k)}.
///   TwoD: omega = -arccos(-rho_x cos(kx + phi_x) - rho_y cos(ky + phi_y))
///   OneD: omega = -arccos(cos(delta) cos(k - alpha)), k = kx (axis 0) or ky
/// (axis 1); beta is the block phase varphi.
struct DispersionSpec {
    DispersionClass cls = DispersionClass::TwoD;
    double beta = 0.0;
    double rho_x = 0.0;
    double rho_y = 0.0;
    double phi_x = 0.0;
    double phi_y = 0.0;
    double delta = 0.0;
    double alpha = 0.0;
    int axis = 0;
};

DispersionSpec dispersion_spec(const FamilyParams &p);

/// Value in [-pi, 0].
double omega(const DispersionSpec &spec, MomentumPoint k);

struct GroupVelocity {
    double vx = 0.0;
    double vy = 0.0;
};

/// Within this distance of +-1 the arccos argument is treated as a band edge.
inline constexpr double kBandEdgeTol = 1e-12;

/// Gradient of omega. Throws SingularPoint at band edges.
GroupVelocity group_velocity(const DispersionSpec &spec, MomentumPoint k);

/// Determinant of the Hessian of omega. Throws SingularPoint at band edges.
double hessian_det(const DispersionSpec &spec, MomentumPoint k);

/// Intersection of the two centered velocity ellipses
///   E_i: (vx / a_i)^2 + (vy / b_i)^2 <= 1.
struct SpreadRegion {
    double a1 = 0.0;
    double b1 = 0.0;
    double a2 = 0.0;
    double b2 = 0.0;
    double vx_int = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double S = 0.0;
    bool coincident = false;
    /// One-dimensional spectrum: the region is a segment on one axis.
    bool segment = false;
    /// No continuous spreading at all.
    bool empty = false;
};

SpreadRegion spread_region(const DispersionSpec &spec);

/// max over both ellipses of (vx/(s a))^2 + (vy/(s b))^2 with s = scale.
/// Points are inside the scaled region iff the value is <= 1. Segment
/// regions treat the collapsed axis as having zero width.
double region_membership(const SpreadRegion &region, double vx, double vy, double scale = 1.0);

struct AreaSweep {
    std::vector<double> delta1;
    std::vector<double> delta2;
    /// Row-major n x n, S[i * n + j] for (delta1[i], delta2[j]); NaN on the
    /// excluded diagonal.
    std::vector<double> S;
    int n = 0;
};

/// Covered area of Type I coins on an n x n grid over [0, pi/2]^2.
AreaSweep area_sweep(int n);

struct SpectrumSample {
    double kx = 0.0;
    double ky = 0.0;
    double omega = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    double det_h = 0.0;
};

/// n x n cell-centered grid over [-pi, pi]^2. Band-edge samples carry NaN
/// velocity and Hessian entries.
std::vector<SpectrumSample> spectrum_grid(const DispersionSpec &spec, int n);

namespace reference {
AreaSweep area_sweep(int n);
}  // namespace reference

}  // namespace trapwalk
