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
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "trapwalk/error.hpp"

namespace trapwalk {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;
using MatrixX = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Constructors are closed-form, so any defect above this is a bug or bad input.
inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kRankTol = 1e-8;

/// Max-abs entry of M^dagger M - I. Throws InvalidInput on NaN/Inf entries.
double unitarity_defect(const Matrix4 &m);

bool is_finite(const Matrix4 &m);

/// Largest absolute entry.
double max_abs(const MatrixX &m);

inline Complex unit_phase(double angle) { return std::polar(1.0, angle); }

struct EigenPair {
    Complex value;
    Vector4 vector;
};

/// Eigen-decomposition of a 4x4 unitary via complex Schur reduction. For a
/// normal matrix the Schur factor is diagonal up to round-off, so the Schur
/// vectors are an orthonormal eigenbasis even inside degenerate clusters.
/// Pairs are sorted by eigenvalue argument in (-pi, pi]; each eigenvector
/// has its first non-negligible component real and non-negative.
std::array<EigenPair, 4> eig_unitary4(const Matrix4 &m, double tol = kUnitarityTol);

struct RankInfo {
    int rank = 0;
    Eigen::VectorXd singular_values;
    /// Orthonormal columns spanning the numerical kernel of M^dagger.
    MatrixX adjoint_kernel;
};

/// Singular values above `rel_tol * sigma_max` count towards the rank.
RankInfo numerical_rank(const MatrixX &m, double rel_tol = kRankTol);

/// Orthonormal basis (columns) of the numerical right kernel of `m`.
MatrixX null_space(const MatrixX &m, double rel_tol);

/// Haar-distributed 4x4 unitary from a QR of a complex Ginibre matrix.
template <class Rng>
Matrix4 random_unitary4(Rng &rng);

}  // namespace trapwalk

#include <random>

namespace trapwalk {

template <class Rng>
Matrix4 random_unitary4(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix4 g;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            g(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix4> qr(g);
    Matrix4 q = qr.householderQ();
    Matrix4 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 4; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0) {
            q.col(i) *= r(i, i) / mag;
        }
    }
    return q;
}

}  // namespace trapwalk
