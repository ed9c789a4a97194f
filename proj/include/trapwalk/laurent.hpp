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

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "trapwalk/coins.hpp"
#include "trapwalk/numeric.hpp"

namespace trapwalk {

/// Inclusive exponent ranges [x_min, x_max] x [y_min, y_max].
struct DegreeWindow {
    int x_min = 0;
    int x_max = 0;
    int y_min = 0;
    int y_max = 0;

    int x_width() const { return x_max - x_min; }
    int y_width() const { return y_max - y_min; }
    bool contains(int i, int j) const {
        return i >= x_min && i <= x_max && j >= y_min && j <= y_max;
    }
    static DegreeWindow hull(const DegreeWindow &a, const DegreeWindow &b);
    static DegreeWindow sum(const DegreeWindow &a, const DegreeWindow &b);
    bool operator==(const DegreeWindow &) const = default;
};

/// Polynomial in x, 1/x, y, 1/y with complex coefficients. The declared
/// window bounds every stored exponent; it may be wider than the support.
class LaurentPoly2 {
  public:
    static constexpr double kPruneTol = 1e-14;
    using Exponent = std::pair<int, int>;

    LaurentPoly2() = default;
    explicit LaurentPoly2(DegreeWindow window) : window_(window) {}

    static LaurentPoly2 constant(Complex c);
    static LaurentPoly2 monomial(Complex c, int i, int j);

    const DegreeWindow &window() const { return window_; }
    const std::map<Exponent, Complex> &terms() const { return terms_; }

    /// Coefficient of x^i y^j (zero if absent).
    Complex coeff(int i, int j) const;
    /// Throws InvalidInput when (i, j) lies outside the declared window.
    void set(int i, int j, Complex c);

    bool empty() const { return terms_.empty(); }
    double max_coefficient() const;
    /// Tight bounds of the stored exponents; {0,0,0,0} for the zero polynomial.
    DegreeWindow support() const;

    Complex evaluate(Complex x, Complex y) const;

    LaurentPoly2 operator+(const LaurentPoly2 &o) const;
    LaurentPoly2 operator-(const LaurentPoly2 &o) const;
    LaurentPoly2 operator*(const LaurentPoly2 &o) const;
    LaurentPoly2 operator*(Complex s) const;
    LaurentPoly2 operator-() const { return *this * Complex(-1.0); }

  private:
    void prune();

    DegreeWindow window_;
    std::map<Exponent, Complex> terms_;
};

/// Unit-modulus evaluation nodes e^{i(2 pi n / count + offset)}.
std::vector<Complex> grid_nodes(int count, double offset = 0.37);

/// Grid test on (x_width + 1) x (y_width + 1) distinct nonzero nodes; values
/// are compared against 1e-10 * max(1, largest coefficient).
bool is_identically_zero(const LaurentPoly2 &p);

using LaurentMatrix = std::array<std::array<LaurentPoly2, 4>, 4>;
using LaurentVector = std::array<LaurentPoly2, 4>;

/// D = C - diag(x, y, 1/y, 1/x).
LaurentMatrix build_D(const Matrix4 &coin);

Matrix4 evaluate(const LaurentMatrix &m, Complex x, Complex y);
Vector4 evaluate(const LaurentVector &v, Complex x, Complex y);

LaurentPoly2 determinant(const LaurentMatrix &m);

/// 3x3 matrix left after deleting row and column i.
using LaurentMatrix3 = std::array<std::array<LaurentPoly2, 3>, 3>;
LaurentMatrix3 principal_minor(const LaurentMatrix &m, int i);
LaurentPoly2 determinant(const LaurentMatrix3 &m);

LaurentVector multiply(const LaurentMatrix &m, const LaurentVector &v);

/// w^(i): the adjugate of the i-th principal minor applied to the deleted
/// column, with -det(minor) inserted at position i (0-based, basis order).
/// Throws Precondition if det D is not identically zero and DegenerateMinor
/// if the minor's determinant vanishes identically.
LaurentVector adjugate_kernel_vector(const LaurentMatrix &d, int i);

/// Ansatz psi(x, y) = sum_{j,l in {0,1}} x^j y^l xi^(j,l) built from a cell.
LaurentVector ansatz_from_cell(const AmplitudeCell &cell);

/// Largest |D(x, y) psi(x, y)| over a verification grid that does not share
/// nodes with the solver grid, relative to the largest ansatz coefficient.
double ansatz_residual(const LaurentMatrix &d, const LaurentVector &psi);

struct LocalizedSolve {
    AmplitudeCell cell;
    /// Every independent cell found; more than one only in the direct-sum case.
    std::vector<AmplitudeCell> cells;
    /// Dimension of the stacked-system kernel (0 when the degenerate branch ran).
    int kernel_dimension = 0;
    bool degenerate_branch = false;
    double residual = 0.0;
    /// Largest magnitude among the eight coefficients that must vanish.
    double structural_zero_defect = 0.0;
};

/// Degree-(1,1) eigenvector of U(k) for a constant eigenphase, returned as a
/// cell normalized to the case II convention with `a` (or the first nonzero
/// amplitude) real and positive.
LocalizedSolve solve_localized(const Matrix4 &coin, Complex eigenphase);
AmplitudeCell localized_eigenstate(const Matrix4 &coin, Complex eigenphase);
std::vector<AmplitudeCell> localized_eigenstates(const Matrix4 &coin, Complex eigenphase);

}  // namespace trapwalk
