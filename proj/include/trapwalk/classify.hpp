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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trapwalk/coins.hpp"
#include "trapwalk/laurent.hpp"
#include "trapwalk/numeric.hpp"

namespace trapwalk {

struct PointEigenphase {
    Complex value;
    int multiplicity = 0;
};

struct PointSpectrum {
    std::vector<PointEigenphase> phases;
    /// Set when some sampled eigenvalue sat within a decade of the cluster
    /// tolerance, i.e. the verdict could flip under a small perturbation.
    bool near_tolerance = false;

    int total_multiplicity() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20200704;
inline constexpr double kClusterTol = 1e-8;

/// Eigenvalues of U(k) shared by k = (0, 0) and `n_samples` pseudo-random
/// quasi-momenta, with the smallest multiplicity seen across samples.
PointSpectrum detect_point_spectrum(const Matrix4 &coin, int n_samples = 8,
                                    std::uint64_t seed = kDefaultSeed,
                                    double cluster_tol = kClusterTol);

enum class Family { NotTrapping, TypeI, TypeIIa, TypeIIb, DirectSumDegenerate };

std::string family_name(Family f);

struct ClassifyOptions {
    int n_samples = 8;
    std::uint64_t seed = kDefaultSeed;
    double cluster_tol = kClusterTol;
    double rank_tol = kRankTol;
};

struct ClassificationResult {
    bool trapping = false;
    std::vector<PointEigenphase> eigenphases;
    Family family = Family::NotTrapping;
    /// 1 or 2 for TypeIIb, 0 otherwise.
    int iib_variant = 0;
    std::optional<int> rank_of_A;
    std::optional<int> escaping_dimension;
    /// Present only when rebuilding the family coin from these parameters
    /// reproduces the input up to a global phase.
    std::optional<FamilyParams> recovered_params;
    bool fully_trapped = false;
    bool near_tolerance = false;
    /// Eigenphase whose localized cell produced the rank of A.
    Complex seed_eigenphase{0.0, 0.0};
};

ClassificationResult classify_coin(const Matrix4 &coin, const ClassifyOptions &opts = {});

/// Orthonormal basis (columns) of the coin states orthogonal to every local
/// coin state of every localized eigenstate. Throws NotTrapping.
MatrixX escaping_subspace(const Matrix4 &coin, const ClassifyOptions &opts = {});

/// W = sum over flat bands of Q^2, where Q is the origin block of the band
/// projector. psi^dagger W psi is the long-time average of P(0,0,t).
Matrix4 trapped_weight_operator(const Matrix4 &coin, int k_grid = 256,
                                const ClassifyOptions &opts = {});
double trapped_weight(const Matrix4 &coin, const Vector4 &initial, int k_grid = 256,
                      const ClassifyOptions &opts = {});

/// Family parameters of a cell. The coin (with the cell's eigenphase) is
/// needed for eta and for every Type IIb parameter; Type I uses only the cell.
FamilyParams recover_parameters(const AmplitudeCell &cell, Family family,
                                const std::optional<Matrix4> &coin = std::nullopt);

/// True when `a` equals `b` times a unit scalar within `tol` (max-abs).
bool equal_up_to_phase(const Matrix4 &a, const Matrix4 &b, double tol);

namespace reference {
/// Single-threaded evaluation of the same k-grid average.
Matrix4 trapped_weight_operator(const Matrix4 &coin, int k_grid = 256,
                                const ClassifyOptions &opts = {});
}  // namespace reference

}  // namespace trapwalk
