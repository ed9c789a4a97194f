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

#include "trapwalk/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace trapwalk {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::ParameterDomain: return "parameter-domain";
        case ErrorKind::NotTrapping: return "not-trapping";
        case ErrorKind::Inconsistency: return "inconsistency";
        case ErrorKind::DegenerateMinor: return "degenerate-minor";
        case ErrorKind::SingularPoint: return "singular-point";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

bool is_finite(const Matrix4 &m) {
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
                return false;
            }
        }
    }
    return true;
}

double max_abs(const MatrixX &m) {
    double best = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            best = std::max(best, std::abs(m(r, c)));
        }
    }
    return best;
}

double unitarity_defect(const Matrix4 &m) {
    if (!is_finite(m)) {
        throw Error(ErrorKind::InvalidInput, "matrix has non-finite entries");
    }
    const Matrix4 gram = m.adjoint() * m - Matrix4::Identity();
    return max_abs(gram);
}

namespace {

void fix_phase(Vector4 &v) {
    for (int i = 0; i < 4; ++i) {
        const double mag = std::abs(v(i));
        if (mag > 1e-12) {
            v *= std::conj(v(i)) / mag;
            v(i) = Complex(mag, 0.0);
            return;
        }
    }
}

}  // namespace

std::array<EigenPair, 4> eig_unitary4(const Matrix4 &m, double tol) {
    const double defect = unitarity_defect(m);
    if (defect >= tol) {
        std::ostringstream msg;
        msg << "eig_unitary4 requires a unitary input (defect " << defect << ")";
        throw Error(ErrorKind::Precondition, msg.str());
    }
    Eigen::ComplexSchur<Matrix4> schur(m, true);
    const Matrix4 &t = schur.matrixT();
    const Matrix4 &q = schur.matrixU();

    std::array<EigenPair, 4> pairs;
    for (int i = 0; i < 4; ++i) {
        pairs[i].value = t(i, i);
        pairs[i].vector = q.col(i);
        fix_phase(pairs[i].vector);
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair &a, const EigenPair &b) {
        return std::arg(a.value) < std::arg(b.value);
    });
    return pairs;
}

RankInfo numerical_rank(const MatrixX &m, double rel_tol) {
    if (!(rel_tol > 0)) {
        throw Error(ErrorKind::InvalidInput, "rank tolerance must be positive");
    }
    Eigen::JacobiSVD<MatrixX> svd(m, Eigen::ComputeFullU);
    RankInfo info;
    info.singular_values = svd.singularValues();
    const double top = info.singular_values.size() > 0 ? info.singular_values(0) : 0.0;
    for (Eigen::Index i = 0; i < info.singular_values.size(); ++i) {
        if (top > 0 && info.singular_values(i) > rel_tol * top) {
            ++info.rank;
        }
    }
    const Eigen::Index rows = m.rows();
    info.adjoint_kernel = svd.matrixU().rightCols(rows - info.rank);
    return info;
}

MatrixX null_space(const MatrixX &m, double rel_tol) {
    Eigen::JacobiSVD<MatrixX> svd(m, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (top > 0 && sv(i) > rel_tol * top) {
            ++rank;
        }
    }
    return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace trapwalk
