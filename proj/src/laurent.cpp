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

#include "trapwalk/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace trapwalk {

DegreeWindow DegreeWindow::hull(const DegreeWindow &a, const DegreeWindow &b) {
    return {std::min(a.x_min, b.x_min), std::max(a.x_max, b.x_max), std::min(a.y_min, b.y_min),
            std::max(a.y_max, b.y_max)};
}

DegreeWindow DegreeWindow::sum(const DegreeWindow &a, const DegreeWindow &b) {
    return {a.x_min + b.x_min, a.x_max + b.x_max, a.y_min + b.y_min, a.y_max + b.y_max};
}

LaurentPoly2 LaurentPoly2::constant(Complex c) { return monomial(c, 0, 0); }

LaurentPoly2 LaurentPoly2::monomial(Complex c, int i, int j) {
    LaurentPoly2 p(DegreeWindow{i, i, j, j});
    p.set(i, j, c);
    return p;
}

Complex LaurentPoly2::coeff(int i, int j) const {
    const auto it = terms_.find({i, j});
    return it == terms_.end() ? Complex(0.0) : it->second;
}

void LaurentPoly2::set(int i, int j, Complex c) {
    if (!window_.contains(i, j)) {
        std::ostringstream msg;
        msg << "exponent (" << i << ", " << j << ") outside the declared window";
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    if (std::abs(c) < kPruneTol) {
        terms_.erase({i, j});
    } else {
        terms_[{i, j}] = c;
    }
}

double LaurentPoly2::max_coefficient() const {
    double best = 0.0;
    for (const auto &[e, c] : terms_) {
        best = std::max(best, std::abs(c));
    }
    return best;
}

DegreeWindow LaurentPoly2::support() const {
    if (terms_.empty()) {
        return {};
    }
    DegreeWindow w{terms_.begin()->first.first, terms_.begin()->first.first,
                   terms_.begin()->first.second, terms_.begin()->first.second};
    for (const auto &[e, c] : terms_) {
        w.x_min = std::min(w.x_min, e.first);
        w.x_max = std::max(w.x_max, e.first);
        w.y_min = std::min(w.y_min, e.second);
        w.y_max = std::max(w.y_max, e.second);
    }
    return w;
}

Complex LaurentPoly2::evaluate(Complex x, Complex y) const {
    Complex total = 0.0;
    for (const auto &[e, c] : terms_) {
        if ((x == 0.0 && e.first < 0) || (y == 0.0 && e.second < 0)) {
            throw Error(ErrorKind::ParameterDomain,
                        "negative exponent evaluated at a zero coordinate");
        }
        total += c * std::pow(x, e.first) * std::pow(y, e.second);
    }
    return total;
}

void LaurentPoly2::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < kPruneTol) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

LaurentPoly2 LaurentPoly2::operator+(const LaurentPoly2 &o) const {
    LaurentPoly2 out(DegreeWindow::hull(window_, o.window_));
    out.terms_ = terms_;
    for (const auto &[e, c] : o.terms_) {
        out.terms_[e] += c;
    }
    out.prune();
    return out;
}

LaurentPoly2 LaurentPoly2::operator-(const LaurentPoly2 &o) const { return *this + (-o); }

LaurentPoly2 LaurentPoly2::operator*(const LaurentPoly2 &o) const {
    LaurentPoly2 out(DegreeWindow::sum(window_, o.window_));
    for (const auto &[e1, c1] : terms_) {
        for (const auto &[e2, c2] : o.terms_) {
            out.terms_[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2;
        }
    }
    out.prune();
    return out;
}

LaurentPoly2 LaurentPoly2::operator*(Complex s) const {
    LaurentPoly2 out(window_);
    for (const auto &[e, c] : terms_) {
        out.terms_[e] = c * s;
    }
    out.prune();
    return out;
}

std::vector<Complex> grid_nodes(int count, double offset) {
    std::vector<Complex> nodes(static_cast<size_t>(count));
    for (int n = 0; n < count; ++n) {
        nodes[static_cast<size_t>(n)] = unit_phase(2.0 * kPi * n / count + offset);
    }
    return nodes;
}

bool is_identically_zero(const LaurentPoly2 &p) {
    if (p.empty()) {
        return true;
    }
    const DegreeWindow &w = p.window();
    const auto xs = grid_nodes(w.x_width() + 1);
    const auto ys = grid_nodes(w.y_width() + 1, 0.37 * std::sqrt(2.0));
    const double threshold = 1e-10 * std::max(1.0, p.max_coefficient());
    for (const Complex &x : xs) {
        for (const Complex &y : ys) {
            if (std::abs(p.evaluate(x, y)) > threshold) {
                return false;
            }
        }
    }
    return true;
}

LaurentMatrix build_D(const Matrix4 &coin) {
    LaurentMatrix d;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            d[r][c] = LaurentPoly2::constant(coin(r, c));
        }
    }
    d[L][L] = d[L][L] - LaurentPoly2::monomial(1.0, 1, 0);
    d[D][D] = d[D][D] - LaurentPoly2::monomial(1.0, 0, 1);
    d[U][U] = d[U][U] - LaurentPoly2::monomial(1.0, 0, -1);
    d[R][R] = d[R][R] - LaurentPoly2::monomial(1.0, -1, 0);
    return d;
}

Matrix4 evaluate(const LaurentMatrix &m, Complex x, Complex y) {
    Matrix4 out;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            out(r, c) = m[r][c].evaluate(x, y);
        }
    }
    return out;
}

Vector4 evaluate(const LaurentVector &v, Complex x, Complex y) {
    Vector4 out;
    for (int r = 0; r < 4; ++r) {
        out(r) = v[r].evaluate(x, y);
    }
    return out;
}

namespace {

LaurentPoly2 det2(const LaurentPoly2 &a, const LaurentPoly2 &b, const LaurentPoly2 &c,
                  const LaurentPoly2 &d) {
    return a * d - b * c;
}

}  // namespace

LaurentPoly2 determinant(const LaurentMatrix3 &m) {
    return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) -
           m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
           m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
}

LaurentMatrix3 principal_minor(const LaurentMatrix &m, int i) {
    LaurentMatrix3 out;
    int rr = 0;
    for (int r = 0; r < 4; ++r) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < 4; ++c) {
            if (c == i) continue;
            out[rr][cc++] = m[r][c];
        }
        ++rr;
    }
    return out;
}

LaurentPoly2 determinant(const LaurentMatrix &m) {
    // Laplace expansion along the first row.
    LaurentPoly2 total = LaurentPoly2::constant(0.0);
    for (int c = 0; c < 4; ++c) {
        LaurentMatrix3 minor;
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int k = 0; k < 4; ++k) {
                if (k == c) continue;
                minor[r - 1][cc++] = m[r][k];
            }
        }
        const LaurentPoly2 term = m[0][c] * determinant(minor);
        total = (c % 2 == 0) ? total + term : total - term;
    }
    return total;
}

LaurentVector multiply(const LaurentMatrix &m, const LaurentVector &v) {
    LaurentVector out;
    for (int r = 0; r < 4; ++r) {
        LaurentPoly2 acc = LaurentPoly2::constant(0.0);
        for (int c = 0; c < 4; ++c) {
            acc = acc + m[r][c] * v[c];
        }
        out[r] = acc;
    }
    return out;
}

LaurentVector adjugate_kernel_vector(const LaurentMatrix &d, int i) {
    if (i < 0 || i > 3) {
        throw Error(ErrorKind::InvalidInput, "adjugate index must be in 0..3");
    }
    if (!is_identically_zero(determinant(d))) {
        throw Error(ErrorKind::Precondition,
                    "det D is not identically zero: eigenvalue 1 is not constant in k");
    }
    const LaurentMatrix3 m = principal_minor(d, i);
    const LaurentPoly2 det_m = determinant(m);
    if (is_identically_zero(det_m)) {
        throw Error(ErrorKind::DegenerateMinor, "principal minor has identically zero determinant");
    }

    // Adjugate: adj(M)_{rc} = (-1)^{r+c} det(M without row c, column r).
    LaurentMatrix3 adj;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            std::array<int, 2> rows{}, cols{};
            for (int k = 0, n = 0; k < 3; ++k) {
                if (k != c) rows[n++] = k;
            }
            for (int k = 0, n = 0; k < 3; ++k) {
                if (k != r) cols[n++] = k;
            }
            LaurentPoly2 cof = det2(m[rows[0]][cols[0]], m[rows[0]][cols[1]], m[rows[1]][cols[0]],
                                    m[rows[1]][cols[1]]);
            adj[r][c] = ((r + c) % 2 == 0) ? cof : -cof;
        }
    }

    std::array<LaurentPoly2, 3> vbar;
    for (int r = 0, n = 0; r < 4; ++r) {
        if (r != i) vbar[n++] = d[r][i];
    }

    LaurentVector w;
    for (int r = 0, n = 0; r < 4; ++r) {
        if (r == i) {
            w[r] = -det_m;
            continue;
        }
        LaurentPoly2 acc = LaurentPoly2::constant(0.0);
        for (int c = 0; c < 3; ++c) {
            acc = acc + adj[n][c] * vbar[c];
        }
        w[r] = acc;
        ++n;
    }
    return w;
}

LaurentVector ansatz_from_cell(const AmplitudeCell &z) {
    const DegreeWindow unit{0, 1, 0, 1};
    LaurentVector psi{LaurentPoly2(unit), LaurentPoly2(unit), LaurentPoly2(unit),
                      LaurentPoly2(unit)};
    psi[L].set(0, 0, z.a);
    psi[D].set(0, 0, z.b);
    psi[L].set(0, 1, z.c);
    psi[U].set(0, 1, z.d);
    psi[D].set(1, 0, z.e);
    psi[R].set(1, 0, z.f);
    psi[U].set(1, 1, z.g);
    psi[R].set(1, 1, z.h);
    return psi;
}

double ansatz_residual(const LaurentMatrix &d, const LaurentVector &psi) {
    double scale = 0.0;
    for (const auto &p : psi) {
        scale = std::max(scale, p.max_coefficient());
    }
    if (!(scale > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "zero ansatz");
    }
    const auto xs = grid_nodes(7, 1.1);
    const auto ys = grid_nodes(7, 2.3);
    double worst = 0.0;
    for (const Complex &x : xs) {
        for (const Complex &y : ys) {
            const Vector4 r = evaluate(d, x, y) * evaluate(psi, x, y);
            worst = std::max(worst, r.cwiseAbs().maxCoeff());
        }
    }
    return worst / scale;
}

namespace {

constexpr int kSolveGrid = 6;
constexpr double kKernelTol = 1e-9;
constexpr double kPatternTol = 1e-9;

// Coefficient index of xi^(j,l)_c in the 16-vector of unknowns.
int unknown_index(int j, int l, int c) { return (j * 2 + l) * 4 + c; }

AmplitudeCell cell_from_unknowns(const Eigen::VectorXcd &xi, double &structural_defect) {
    AmplitudeCell z{};
    z.a = xi(unknown_index(0, 0, L));
    z.b = xi(unknown_index(0, 0, D));
    z.c = xi(unknown_index(0, 1, L));
    z.d = xi(unknown_index(0, 1, U));
    z.e = xi(unknown_index(1, 0, D));
    z.f = xi(unknown_index(1, 0, R));
    z.g = xi(unknown_index(1, 1, U));
    z.h = xi(unknown_index(1, 1, R));
    const int zeros[8] = {unknown_index(0, 0, U), unknown_index(0, 0, R), unknown_index(0, 1, D),
                          unknown_index(0, 1, R), unknown_index(1, 0, L), unknown_index(1, 0, U),
                          unknown_index(1, 1, L), unknown_index(1, 1, D)};
    structural_defect = 0.0;
    for (int k : zeros) {
        structural_defect = std::max(structural_defect, std::abs(xi(k)));
    }
    return z;
}

// Normalize to the case II convention and rotate the global phase so the
// first amplitude of non-negligible size is real and positive.
AmplitudeCell gauge_fixed(const AmplitudeCell &raw, Complex eigenphase) {
    AmplitudeCell z = raw.normalized(NormConvention::CaseII);
    auto amps = z.amplitudes();
    double top = 0.0;
    for (const Complex &v : amps) top = std::max(top, std::abs(v));
    for (const Complex &v : amps) {
        if (std::abs(v) > 1e-8 * top) {
            const Complex rot = std::conj(v) / std::abs(v);
            for (Complex &u : amps) u *= rot;
            break;
        }
    }
    return AmplitudeCell::from_amplitudes(amps, eigenphase, NormConvention::CaseII);
}

bool matches_pair_pattern(const Matrix4 &c, int p, int q) {
    // Diagonal entries vanish and the off-diagonal pair is a unit-modulus
    // conjugate pair, so {p, q} is a trapping one-dimensional block.
    return std::abs(c(p, p)) < kPatternTol && std::abs(c(q, q)) < kPatternTol &&
           std::abs(c(p, q) * c(q, p) - 1.0) < kPatternTol;
}

}  // namespace

LocalizedSolve solve_localized(const Matrix4 &coin, Complex eigenphase) {
    if (std::abs(std::abs(eigenphase) - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidInput, "eigenphase must have unit modulus");
    }
    const Matrix4 shifted = std::conj(eigenphase) * coin;
    const LaurentMatrix d = build_D(shifted);
    if (!is_identically_zero(determinant(d))) {
        throw Error(ErrorKind::NotTrapping, "the requested eigenphase is not a constant eigenvalue");
    }

    LocalizedSolve out;

    bool minor_degenerate = false;
    for (int i = 0; i < 4 && !minor_degenerate; ++i) {
        minor_degenerate = is_identically_zero(determinant(principal_minor(d, i)));
    }
    if (minor_degenerate) {
        if (matches_pair_pattern(shifted, D, U)) {
            // psi = e_D + C_UD y e_U
            AmplitudeCell raw{};
            raw.b = 1.0;
            raw.d = shifted(U, D);
            out.cells.push_back(gauge_fixed(raw, eigenphase));
        }
        if (matches_pair_pattern(shifted, L, R)) {
            // psi = e_L + C_RL x e_R
            AmplitudeCell raw{};
            raw.a = 1.0;
            raw.f = shifted(R, L);
            out.cells.push_back(gauge_fixed(raw, eigenphase));
        }
        if (out.cells.empty()) {
            throw Error(ErrorKind::Inconsistency,
                        "a principal minor vanishes but neither one-dimensional block traps");
        }
        out.cell = out.cells.front();
        out.degenerate_branch = true;
        for (const AmplitudeCell &c : out.cells) {
            out.residual = std::max(out.residual, ansatz_residual(d, ansatz_from_cell(c)));
        }
        return out;
    }

    const auto nodes_x = grid_nodes(kSolveGrid);
    const auto nodes_y = grid_nodes(kSolveGrid, 0.37 * std::sqrt(3.0));
    MatrixX stacked = MatrixX::Zero(4 * kSolveGrid * kSolveGrid, 16);
    int row = 0;
    for (const Complex &x : nodes_x) {
        for (const Complex &y : nodes_y) {
            const Matrix4 dv = evaluate(d, x, y);
            for (int j = 0; j < 2; ++j) {
                for (int l = 0; l < 2; ++l) {
                    const Complex mono = std::pow(x, j) * std::pow(y, l);
                    for (int c = 0; c < 4; ++c) {
                        stacked.block(row, unknown_index(j, l, c), 4, 1) = mono * dv.col(c);
                    }
                }
            }
            row += 4;
        }
    }
    const MatrixX kernel = null_space(stacked, kKernelTol);
    out.kernel_dimension = static_cast<int>(kernel.cols());
    if (out.kernel_dimension == 0) {
        throw Error(ErrorKind::Inconsistency, "stacked system has no kernel at the solver grid");
    }
    if (out.kernel_dimension > 1) {
        throw Error(ErrorKind::Inconsistency,
                    "degree-(1,1) kernel is not one-dimensional but no principal minor vanishes");
    }
    const AmplitudeCell raw = cell_from_unknowns(kernel.col(0), out.structural_zero_defect);
    if (out.structural_zero_defect > 1e-10) {
        std::ostringstream msg;
        msg << "kernel vector violates the 2x2 support pattern (defect "
            << out.structural_zero_defect << ")";
        throw Error(ErrorKind::Inconsistency, msg.str());
    }
    out.cell = gauge_fixed(raw, eigenphase);
    out.cells = {out.cell};
    out.residual = ansatz_residual(d, ansatz_from_cell(out.cell));
    return out;
}

AmplitudeCell localized_eigenstate(const Matrix4 &coin, Complex eigenphase) {
    return solve_localized(coin, eigenphase).cell;
}

std::vector<AmplitudeCell> localized_eigenstates(const Matrix4 &coin, Complex eigenphase) {
    return solve_localized(coin, eigenphase).cells;
}

}  // namespace trapwalk
