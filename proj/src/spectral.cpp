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

#include "trapwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels.hpp"

namespace trapwalk {

Matrix4 shift_symbol(MomentumPoint k) {
    Matrix4 s = Matrix4::Zero();
    s(L, L) = unit_phase(-k.kx);
    s(D, D) = unit_phase(-k.ky);
    s(U, U) = unit_phase(k.ky);
    s(R, R) = unit_phase(k.kx);
    return s;
}

Matrix4 momentum_operator(const Matrix4 &coin, MomentumPoint k) {
    Matrix4 out = coin;
    out.row(L) *= unit_phase(-k.kx);
    out.row(D) *= unit_phase(-k.ky);
    out.row(U) *= unit_phase(k.ky);
    out.row(R) *= unit_phase(k.kx);
    return out;
}

DispersionSpec dispersion_spec(const FamilyParams &params) {
    DispersionSpec spec;
    if (const auto *p = std::get_if<TypeIParams>(&params)) {
        validate(*p);
        spec.beta = 0.0;
        spec.rho_x = std::cos(p->delta1) * std::cos(p->delta2);
        spec.rho_y = std::sin(p->delta1) * std::sin(p->delta2);
        spec.phi_x = p->phi_g - p->phi_d;
        spec.phi_y = p->phi_h - p->phi_f;
    } else if (const auto *p = std::get_if<TypeIIaParams>(&params)) {
        validate(*p);
        const double c1 = std::cos(p->delta1), s1 = std::sin(p->delta1);
        const double half = std::sin(p->eta / 2);
        spec.beta = (p->eta - kPi) / 2;
        spec.rho_x = c1 * c1 * std::sin(2 * p->delta2) * half;
        spec.rho_y = s1 * s1 * std::sin(2 * p->delta3) * half;
        spec.phi_x = p->phi_g - p->phi_d;
        spec.phi_y = p->phi_h - p->phi_f;
        // eta < 0 flips the sign of both amplitudes; absorb it as a pi shift.
        if (half < 0) {
            spec.rho_x = -spec.rho_x;
            spec.rho_y = -spec.rho_y;
            spec.phi_x += kPi;
            spec.phi_y += kPi;
        }
    } else {
        const auto &q = std::get<TypeIIbParams>(params);
        validate(q);
        spec.cls = DispersionClass::OneD;
        spec.beta = q.varphi;
        spec.delta = q.delta;
        spec.alpha = q.alpha;
        spec.axis = q.variant == 1 ? 0 : 1;
    }
    return spec;
}

namespace {

double band_argument(const DispersionSpec &s, MomentumPoint k) {
    if (s.cls == DispersionClass::OneD) {
        const double kk = s.axis == 0 ? k.kx : k.ky;
        return std::cos(s.delta) * std::cos(kk - s.alpha);
    }
    return -s.rho_x * std::cos(k.kx + s.phi_x) - s.rho_y * std::cos(k.ky + s.phi_y);
}

double edge_checked_gap(double u) {
    const double q = 1.0 - u * u;
    if (1.0 - std::abs(u) < kBandEdgeTol) {
        throw Error(ErrorKind::SingularPoint, "band edge: arccos argument is +-1");
    }
    return q;
}

}  // namespace

double omega(const DispersionSpec &spec, MomentumPoint k) {
    return -std::acos(std::clamp(band_argument(spec, k), -1.0, 1.0));
}

GroupVelocity group_velocity(const DispersionSpec &spec, MomentumPoint k) {
    const double u = band_argument(spec, k);
    const double root = std::sqrt(edge_checked_gap(u));
    GroupVelocity v;
    if (spec.cls == DispersionClass::OneD) {
        const double kk = spec.axis == 0 ? k.kx : k.ky;
        const double dv = std::cos(spec.delta) * std::sin(spec.alpha - kk) / root;
        (spec.axis == 0 ? v.vx : v.vy) = dv;
        return v;
    }
    v.vx = spec.rho_x * std::sin(k.kx + spec.phi_x) / root;
    v.vy = spec.rho_y * std::sin(k.ky + spec.phi_y) / root;
    return v;
}

double hessian_det(const DispersionSpec &spec, MomentumPoint k) {
    const double u = band_argument(spec, k);
    const double q = edge_checked_gap(u);
    if (spec.cls == DispersionClass::OneD) {
        return 0.0;
    }
    const double cx = std::cos(k.kx + spec.phi_x), sx = std::sin(k.kx + spec.phi_x);
    const double cy = std::cos(k.ky + spec.phi_y), sy = std::sin(k.ky + spec.phi_y);
    const double rx = spec.rho_x, ry = spec.rho_y;
    // omega_ij = u_ij / sqrt(q) + u u_i u_j / q^{3/2} with u_xy = 0; the
    // cross terms of the determinant cancel down to a single q^2 denominator.
    return rx * ry * (cx * cy * q + u * (ry * cx * sy * sy + rx * cy * sx * sx)) / (q * q);
}

SpreadRegion spread_region(const DispersionSpec &spec) {
    SpreadRegion r;
    if (spec.cls == DispersionClass::OneD) {
        r.segment = true;
        const double reach = std::cos(spec.delta);
        if (spec.axis == 0) {
            r.a1 = r.a2 = reach;
        } else {
            r.b1 = r.b2 = reach;
        }
        r.vx_int = spec.axis == 0 ? reach : 0.0;
        r.empty = reach < 1e-15;
        return r;
    }
    const double rx = spec.rho_x, ry = spec.rho_y;
    if (rx < 0 || ry < 0 || rx + ry > 1.0 + 1e-12) {
        throw Error(ErrorKind::InvalidInput, "dispersion amplitudes outside 0 <= rho, rho_x + rho_y <= 1");
    }
    // cos(pi/2) evaluates to 6e-17, so compare against round-off rather than 0.
    if (rx < 1e-14 && ry < 1e-14) {
        r.empty = true;
        return r;
    }
    if (std::abs(rx + ry - 1.0) < 1e-12) {
        r.coincident = true;
        r.a1 = r.a2 = std::sqrt(rx);
        r.b1 = r.b2 = std::sqrt(ry);
        r.vx_int = r.a1;
        r.theta1 = kPi;
        r.theta2 = 0.0;
        r.S = kPi * r.a1 * r.b1;
        return r;
    }

    // a_1^2 >= a_2^2 are the roots of z^2 - (1 + rx^2 - ry^2) z + rx^2 and
    // b_1^2 <= b_2^2 those of z^2 - (1 - rx^2 + ry^2) z + ry^2.
    const auto roots = [](double p, double q) {
        const double disc = std::sqrt(std::max(0.0, p * p - 4.0 * q));
        const double big = 0.5 * (p + disc);
        const double small = big > 0 ? q / big : 0.0;
        return std::pair<double, double>{small, big};
    };
    const auto [a_small, a_big] = roots(1 + rx * rx - ry * ry, rx * rx);
    const auto [b_small, b_big] = roots(1 - rx * rx + ry * ry, ry * ry);
    r.a1 = std::sqrt(a_big);
    r.b1 = std::sqrt(b_small);
    r.a2 = r.a1 > 0 ? rx / r.a1 : 0.0;
    r.b2 = r.b1 > 0 ? ry / r.b1 : std::sqrt(b_big);

    const double a1s = r.a1 * r.a1, a2s = r.a2 * r.a2, b1s = r.b1 * r.b1, b2s = r.b2 * r.b2;
    const double denom = a2s * b1s - a1s * b2s;
    if (std::abs(denom) < 1e-300) {
        r.vx_int = std::min(r.a1, r.a2);
    } else {
        r.vx_int = r.a1 * r.a2 * std::sqrt(std::abs((b1s - b2s) / denom));
    }
    r.vx_int = std::min({r.vx_int, r.a1, r.a2});
    r.theta1 = r.a1 > 0 ? 2 * std::asin(std::min(1.0, r.vx_int / r.a1)) : 0.0;
    r.theta2 = r.a2 > 0 ? 2 * std::acos(std::min(1.0, r.vx_int / r.a2)) : 0.0;
    r.S = r.theta1 * r.a1 * r.b1 + r.theta2 * r.a2 * r.b2;
    return r;
}

double region_membership(const SpreadRegion &region, double vx, double vy, double scale) {
    if (region.empty) {
        return (vx == 0.0 && vy == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const auto form = [&](double a, double b) {
        const double sa = a * scale, sb = b * scale;
        double value = 0.0;
        if (sa > 0) {
            value += (vx / sa) * (vx / sa);
        } else if (vx != 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        if (sb > 0) {
            value += (vy / sb) * (vy / sb);
        } else if (vy != 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        return value;
    };
    return std::max(form(region.a1, region.b1), form(region.a2, region.b2));
}

AreaSweep area_sweep(int n) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "area sweep needs n >= 2");
    AreaSweep sweep;
    sweep.n = n;
    for (int i = 0; i < n; ++i) {
        sweep.delta1.push_back(0.5 * kPi * i / (n - 1));
    }
    sweep.delta2 = sweep.delta1;
    sweep.S.assign(static_cast<size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
    kernels::area_sweep_omp(sweep);
    return sweep;
}

namespace reference {
AreaSweep area_sweep(int n) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "area sweep needs n >= 2");
    AreaSweep sweep;
    sweep.n = n;
    for (int i = 0; i < n; ++i) {
        sweep.delta1.push_back(0.5 * kPi * i / (n - 1));
    }
    sweep.delta2 = sweep.delta1;
    sweep.S.assign(static_cast<size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
    kernels::area_sweep_serial(sweep);
    return sweep;
}
}  // namespace reference

std::vector<SpectrumSample> spectrum_grid(const DispersionSpec &spec, int n) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "spectrum grid needs n >= 1");
    std::vector<SpectrumSample> out;
    out.reserve(static_cast<size_t>(n) * n);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            SpectrumSample s;
            s.kx = -kPi + 2 * kPi * (i + 0.5) / n;
            s.ky = -kPi + 2 * kPi * (j + 0.5) / n;
            const MomentumPoint k{s.kx, s.ky};
            s.omega = omega(spec, k);
            try {
                const GroupVelocity v = group_velocity(spec, k);
                s.vx = v.vx;
                s.vy = v.vy;
                s.det_h = hessian_det(spec, k);
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::SingularPoint) throw;
                s.vx = s.vy = s.det_h = nan;
            }
            out.push_back(s);
        }
    }
    return out;
}

namespace kernels {

double sweep_area(double delta1, double delta2) {
    DispersionSpec spec;
    spec.rho_x = std::cos(delta1) * std::cos(delta2);
    spec.rho_y = std::sin(delta1) * std::sin(delta2);
    // Round-off can push rho_x + rho_y a hair above 1 near the corners.
    const double total = spec.rho_x + spec.rho_y;
    if (total > 1.0) {
        spec.rho_x /= total;
        spec.rho_y /= total;
    }
    return spread_region(spec).S;
}

}  // namespace kernels

}  // namespace trapwalk
