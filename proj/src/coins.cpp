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

#include "trapwalk/coins.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace trapwalk {

namespace {

constexpr double kAngleSlack = 1e-12;

void require_angle(double v, double lo, double hi, const char *name) {
    if (!std::isfinite(v) || v < lo - kAngleSlack || v > hi + kAngleSlack) {
        std::ostringstream msg;
        msg << name << " = " << v << " outside [" << lo << ", " << hi << "]";
        throw Error(ErrorKind::ParameterDomain, msg.str());
    }
}

void require_finite(double v, const char *name) {
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::ParameterDomain, std::string(name) + " is not finite");
    }
}

Complex ph(double angle) { return unit_phase(angle); }

}  // namespace

void validate(const TypeIParams &p) {
    require_angle(p.delta1, 0.0, kPi / 2, "delta1");
    require_angle(p.delta2, 0.0, kPi / 2, "delta2");
    for (double v : {p.phi_d, p.phi_e, p.phi_f, p.phi_g, p.phi_h}) {
        require_finite(v, "phase");
    }
    if (p.delta1 == p.delta2) {
        throw Error(ErrorKind::ParameterDomain,
                    "Type I coins require delta1 != delta2 (equal angles are rank-deficient)");
    }
}

void validate(const TypeIIaParams &p) {
    if (!(p.delta1 > 0.0 && p.delta1 < kPi / 2)) {
        throw Error(ErrorKind::ParameterDomain,
                    "Type IIa coins require delta1 strictly inside (0, pi/2)");
    }
    require_angle(p.delta2, 0.0, kPi / 2, "delta2");
    require_angle(p.delta3, 0.0, kPi / 2, "delta3");
    if (!std::isfinite(p.eta) || p.eta <= -kPi || p.eta > kPi) {
        throw Error(ErrorKind::ParameterDomain, "eta must lie in (-pi, pi]");
    }
    if (p.eta == 0.0) {
        throw Error(ErrorKind::ParameterDomain, "Type IIa coins require eta != 0");
    }
    for (double v : {p.phi_d, p.phi_e, p.phi_f, p.phi_g, p.phi_h}) {
        require_finite(v, "phase");
    }
}

void validate(const TypeIIbParams &p) {
    if (p.variant != 1 && p.variant != 2) {
        throw Error(ErrorKind::ParameterDomain, "Type IIb variant must be 1 or 2");
    }
    require_angle(p.delta, 0.0, kPi / 2, "delta");
    if (!std::isfinite(p.varphi) || p.varphi < 0.0 || p.varphi >= kPi) {
        throw Error(ErrorKind::ParameterDomain, "varphi must lie in [0, pi)");
    }
    for (double v : {p.alpha, p.beta, p.gamma, p.phi_f}) {
        require_finite(v, "phase");
    }
}

Matrix4 coin_type_I(const TypeIParams &p) {
    validate(p);
    const double s1 = std::sin(p.delta1), c1 = std::cos(p.delta1);
    const double s2 = std::sin(p.delta2), c2 = std::cos(p.delta2);
    const double fd = p.phi_d, fe = p.phi_e, ff = p.phi_f, fg = p.phi_g, fh = p.phi_h;

    Matrix4 m;
    m << -ph(fd - fg) * c1 * c2, ph(-fe) * s1 * c2, ph(fh - ff - fg) * c1 * s2, ph(-ff) * s1 * s2,
        ph(fd + fe + ff - fg - fh) * c1 * s2, -ph(ff - fh) * s1 * s2, ph(fe - fg) * c1 * c2,
        ph(fe - fh) * s1 * c2,
        ph(fd) * s1 * c2, ph(fg - fe) * c1 * c2, -ph(fh - ff) * s1 * s2, ph(fg - ff) * c1 * s2,
        ph(ff) * s1 * s2, ph(ff + fg - fd - fe) * c1 * s2, ph(fh - fd) * s1 * c2,
        -ph(fg - fd) * c1 * c2;
    return m;
}

Matrix4 type_IIa_formula(const TypeIIaParams &p) {
    const double s1 = std::sin(p.delta1), c1 = std::cos(p.delta1);
    const double s2 = std::sin(p.delta2), c2 = std::cos(p.delta2);
    const double s3 = std::sin(p.delta3), c3 = std::cos(p.delta3);
    const double fd = p.phi_d, fe = p.phi_e, ff = p.phi_f, fg = p.phi_g, fh = p.phi_h;
    const Complex x = p.xi();

    Matrix4 m;
    m(0, 0) = ph(fd - fg) * x * (c1 * c1 * c2 * s2);
    m(0, 1) = -ph(-fe) * x * (c1 * c2 * s1 * s3);
    m(0, 2) = -ph(fh - ff - fg) * x * (c1 * c2 * c3 * s1);
    m(0, 3) = ph(-ff) * (1.0 + x * (c1 * c1 * c2 * c2));

    m(1, 0) = -ph(fd + fe + ff - fg - fh) * x * (c1 * c3 * s1 * s2);
    m(1, 1) = ph(ff - fh) * x * (c3 * s1 * s1 * s3);
    m(1, 2) = ph(fe - fg) * (1.0 + x * (c3 * c3 * s1 * s1));
    m(1, 3) = -ph(fe - fh) * x * (c1 * c2 * c3 * s1);

    m(2, 0) = -ph(fd) * x * (c1 * s1 * s2 * s3);
    m(2, 1) = ph(fg - fe) * (1.0 + x * (s1 * s1 * s3 * s3));
    m(2, 2) = ph(fh - ff) * x * (c3 * s1 * s1 * s3);
    m(2, 3) = -ph(fg - ff) * x * (c1 * c2 * s1 * s3);

    m(3, 0) = ph(ff) * (1.0 + x * (c1 * c1 * s2 * s2));
    m(3, 1) = -ph(ff + fg - fd - fe) * x * (c1 * s1 * s2 * s3);
    m(3, 2) = -ph(fh - fd) * x * (c1 * c3 * s1 * s2);
    m(3, 3) = ph(fg - fd) * x * (c1 * c1 * c2 * s2);
    return m;
}

Matrix4 coin_type_IIa(const TypeIIaParams &p) {
    validate(p);
    return type_IIa_formula(p);
}

Vector4 type_IIa_kernel_state(const TypeIIaParams &p) {
    const double s1 = std::sin(p.delta1), c1 = std::cos(p.delta1);
    const double s2 = std::sin(p.delta2), c2 = std::cos(p.delta2);
    const double s3 = std::sin(p.delta3), c3 = std::cos(p.delta3);
    const double fd = p.phi_d, fe = p.phi_e, ff = p.phi_f, fg = p.phi_g, fh = p.phi_h;
    Vector4 v;
    v << c1 * s2, -ph(fd + fe - fg) * (s1 * s3), -ph(fd + ff - fh) * (s1 * c3),
        ph(fd + ff - fg) * (c1 * c2);
    return v;
}

Matrix4 type_IIa_reflection_part(const TypeIIaParams &p) {
    // L <-> R and D <-> U swaps. The phases are the ones carried by the
    // eta -> 0 limit of the closed form: C_LR = e^{-i phi_f}, C_DU = e^{i(phi_e - phi_g)}.
    Matrix4 m = Matrix4::Zero();
    m(L, R) = ph(-p.phi_f);
    m(R, L) = ph(p.phi_f);
    m(D, U) = ph(p.phi_e - p.phi_g);
    m(U, D) = ph(p.phi_g - p.phi_e);
    return m;
}

Matrix4 type_IIa_structured(const TypeIIaParams &p) {
    const Vector4 k = type_IIa_kernel_state(p);
    const Matrix4 reflect = Matrix4::Identity() + p.xi() * (k * k.adjoint());
    return type_IIa_reflection_part(p) * reflect;
}

Matrix4 coin_type_IIb(const TypeIIbParams &p) {
    validate(p);
    const double cd = std::cos(p.delta), sd = std::sin(p.delta);
    // 2x2 block shared by both variants, acting on (first, second) basis states.
    const Complex b00 = ph(p.varphi + p.alpha) * cd;
    const Complex b01 = ph(p.varphi - p.beta) * sd;
    const Complex b10 = -ph(p.varphi + p.beta) * sd;
    const Complex b11 = ph(p.varphi - p.alpha) * cd;

    Matrix4 m = Matrix4::Zero();
    if (p.variant == 1) {
        m(L, L) = b00;
        m(L, R) = b01;
        m(R, L) = b10;
        m(R, R) = b11;
        m(D, U) = ph(-p.gamma);
        m(U, D) = ph(p.gamma);
    } else {
        m(D, D) = b00;
        m(D, U) = b01;
        m(U, D) = b10;
        m(U, U) = b11;
        m(L, R) = ph(-p.phi_f);
        m(R, L) = ph(p.phi_f);
    }
    return m;
}

Matrix4 make_coin(const FamilyParams &p) {
    return std::visit(
        [](const auto &params) -> Matrix4 {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, TypeIParams>) {
                return coin_type_I(params);
            } else if constexpr (std::is_same_v<T, TypeIIaParams>) {
                return coin_type_IIa(params);
            } else {
                return coin_type_IIb(params);
            }
        },
        p);
}

std::string family_label(const FamilyParams &p) {
    switch (p.index()) {
        case 0: return "TypeI";
        case 1: return "TypeIIa";
        default: return "TypeIIb";
    }
}

double norm_squared_of(NormConvention c) { return c == NormConvention::TypeI ? 4.0 : 2.0; }

AmplitudeCell AmplitudeCell::from_amplitudes(const std::array<Complex, 8> &amps, Complex eigenphase,
                                             NormConvention convention) {
    AmplitudeCell cell{amps[0], amps[1], amps[2], amps[3], amps[4], amps[5], amps[6], amps[7],
                       eigenphase, convention};
    return cell;
}

double AmplitudeCell::norm_squared() const {
    double sum = 0.0;
    for (const Complex &z : amplitudes()) {
        sum += std::norm(z);
    }
    return sum;
}

AmplitudeCell AmplitudeCell::normalized(NormConvention target) const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "cannot normalize an all-zero amplitude cell");
    }
    const double scale = std::sqrt(norm_squared_of(target) / n2);
    auto amps = amplitudes();
    for (Complex &z : amps) {
        z *= scale;
    }
    return from_amplitudes(amps, eigenphase, target);
}

AmplitudeCell AmplitudeCell::chiral_partner() const {
    return AmplitudeCell{a, b, -c, -d, -e, -f, g, h, -eigenphase, convention};
}

Vector4 AmplitudeCell::local_state(int i, int j) const {
    Vector4 v = Vector4::Zero();
    if (i == 0 && j == 0) {
        v(L) = a;
        v(D) = b;
    } else if (i == 0 && j == 1) {
        v(L) = c;
        v(U) = d;
    } else if (i == 1 && j == 0) {
        v(D) = e;
        v(R) = f;
    } else if (i == 1 && j == 1) {
        v(U) = g;
        v(R) = h;
    } else {
        throw Error(ErrorKind::InvalidInput, "cell site indices must be 0 or 1");
    }
    return v;
}

double AmplitudeCell::site_probability(int i, int j) const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "all-zero amplitude cell");
    }
    return local_state(i, j).squaredNorm() / n2;
}

double cell_constraint_defect(const AmplitudeCell &z) {
    const auto n = [](Complex v) { return std::norm(v); };
    const double c1 = std::abs(n(z.a) + n(z.b) - n(z.d) - n(z.f));
    const double c4 = std::abs(n(z.g) + n(z.h) - n(z.c) - n(z.e));
    const double c2 = std::abs(n(z.c) + n(z.d) - n(z.b) - n(z.h));
    const double ac = std::abs(z.a * std::conj(z.c) - z.f * std::conj(z.h));
    const double be = std::abs(z.b * std::conj(z.e) - z.d * std::conj(z.g));
    return std::max({c1, c4, c2, ac, be});
}

StationaryPair stationary_cell(const FamilyParams &p) {
    AmplitudeCell cell{};
    if (const auto *t1 = std::get_if<TypeIParams>(&p)) {
        validate(*t1);
        const double s1 = std::sin(t1->delta1), c1 = std::cos(t1->delta1);
        const double s2 = std::sin(t1->delta2), c2 = std::cos(t1->delta2);
        cell.a = s1;
        cell.b = c1 * ph(t1->phi_d + t1->phi_e - t1->phi_g);
        cell.c = s2 * ph(t1->phi_h - t1->phi_f);
        cell.d = c2 * ph(t1->phi_d);
        cell.e = c2 * ph(t1->phi_e);
        cell.f = s2 * ph(t1->phi_f);
        cell.g = c1 * ph(t1->phi_g);
        cell.h = s1 * ph(t1->phi_h);
        cell.convention = NormConvention::TypeI;
    } else if (const auto *t2 = std::get_if<TypeIIaParams>(&p)) {
        validate(*t2);
        const double s1 = std::sin(t2->delta1), c1 = std::cos(t2->delta1);
        const double s2 = std::sin(t2->delta2), c2 = std::cos(t2->delta2);
        const double s3 = std::sin(t2->delta3), c3 = std::cos(t2->delta3);
        cell.a = s1 * s3;
        cell.b = c1 * s2 * ph(t2->phi_d + t2->phi_e - t2->phi_g);
        cell.c = s1 * c3 * ph(t2->phi_h - t2->phi_f);
        cell.d = c1 * s2 * ph(t2->phi_d);
        cell.e = c1 * c2 * ph(t2->phi_e);
        cell.f = s1 * s3 * ph(t2->phi_f);
        cell.g = c1 * c2 * ph(t2->phi_g);
        cell.h = s1 * c3 * ph(t2->phi_h);
        cell.convention = NormConvention::CaseII;
    } else {
        const auto &t3 = std::get<TypeIIbParams>(p);
        validate(t3);
        cell.a = cell.b = cell.c = cell.d = cell.e = cell.f = cell.g = cell.h = 0.0;
        if (t3.variant == 1) {
            // |0,0>|D> + e^{i gamma} |0,1>|U>
            cell.b = 1.0;
            cell.d = ph(t3.gamma);
        } else {
            // |0,0>|L> + e^{i phi_f} |1,0>|R>
            cell.a = 1.0;
            cell.f = ph(t3.phi_f);
        }
        cell.convention = NormConvention::CaseII;
    }
    cell.eigenphase = 1.0;
    return StationaryPair{cell, cell.chiral_partner()};
}

BalanceMatrices balance_matrices(const AmplitudeCell &z) {
    if (!(z.norm_squared() > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "balance matrices of an all-zero cell are undefined");
    }
    BalanceMatrices m;
    m.A << z.a, z.c, 0, 0,
        z.b, 0, z.e, 0,
        0, z.d, 0, z.g,
        0, 0, z.f, z.h;
    m.B << 0, 0, z.a, z.c,
        0, z.b, 0, z.e,
        z.d, 0, z.g, 0,
        z.f, z.h, 0, 0;
    return m;
}

}  // namespace trapwalk
