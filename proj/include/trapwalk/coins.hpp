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
#include <string>
#include <variant>

#include "trapwalk/numeric.hpp"

namespace trapwalk {

/// Coin basis order, used for rows and columns of every coin matrix.
enum Direction : int { L = 0, D = 1, U = 2, R = 3 };

/// Strong-trapping coins (amplitude matrix of full rank).
struct TypeIParams {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double phi_d = 0.0;
    double phi_e = 0.0;
    double phi_f = 0.0;
    double phi_g = 0.0;
    double phi_h = 0.0;
};

/// Rank-3 coins. eta is the phase the coin puts on the escaping direction.
struct TypeIIaParams {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
    double eta = kPi;
    double phi_d = 0.0;
    double phi_e = 0.0;
    double phi_f = 0.0;
    double phi_g = 0.0;
    double phi_h = 0.0;

    /// e^{i eta} - 1
    Complex xi() const { return unit_phase(eta) - 1.0; }
};

/// Quasi one-dimensional coins: a direct sum of a horizontal and a vertical
/// 2x2 block. Variant 1 traps vertically (gamma), variant 2 horizontally (phi_f).
struct TypeIIbParams {
    int variant = 1;
    double delta = 0.0;
    double varphi = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double phi_f = 0.0;
};

using FamilyParams = std::variant<TypeIParams, TypeIIaParams, TypeIIbParams>;

void validate(const TypeIParams &p);
void validate(const TypeIIaParams &p);
void validate(const TypeIIbParams &p);

Matrix4 coin_type_I(const TypeIParams &p);
Matrix4 coin_type_IIa(const TypeIIaParams &p);
Matrix4 coin_type_IIb(const TypeIIbParams &p);
Matrix4 make_coin(const FamilyParams &p);

/// The closed-form rank-3 matrix without parameter validation. Used to check
/// the boundary delta1 in {0, pi/2}, where it collapses onto Type IIb coins.
Matrix4 type_IIa_formula(const TypeIIaParams &p);

/// Unit vector spanning ker(A^dagger) of the rank-3 amplitude matrix.
Vector4 type_IIa_kernel_state(const TypeIIaParams &p);

/// Direct sum of the two one-dimensional trapping coins, phased so that it is
/// the eta -> 0 limit of the rank-3 formula.
Matrix4 type_IIa_reflection_part(const TypeIIaParams &p);

/// (C_H + C_V)(I + Xi |k><k|) evaluated as a product; equals coin_type_IIa.
Matrix4 type_IIa_structured(const TypeIIaParams &p);

std::string family_label(const FamilyParams &p);

/// Which overall scale a cell's amplitudes carry: sum of |a..h|^2 is 4 for
/// the full-rank family and 2 for the rank-deficient ones.
enum class NormConvention { TypeI, CaseII };

double norm_squared_of(NormConvention c);

/// The eight amplitudes of a stationary state supported on the unit cell
/// (0,0),(0,1),(1,0),(1,1):
///   (0,0): a|L> + b|D>    (0,1): c|L> + d|U>
///   (1,0): e|D> + f|R>    (1,1): g|U> + h|R>
struct AmplitudeCell {
    Complex a, b, c, d, e, f, g, h;
    Complex eigenphase{1.0, 0.0};
    NormConvention convention = NormConvention::CaseII;

    std::array<Complex, 8> amplitudes() const { return {a, b, c, d, e, f, g, h}; }
    static AmplitudeCell from_amplitudes(const std::array<Complex, 8> &amps, Complex eigenphase,
                                         NormConvention convention);

    double norm_squared() const;
    /// Rescaled so norm_squared() matches the convention.
    AmplitudeCell normalized(NormConvention target) const;
    /// (-1)^{x+y} sign flip; eigenphase picks up a factor -1.
    AmplitudeCell chiral_partner() const;

    /// Coin state at cell site (i, j), i, j in {0, 1}.
    Vector4 local_state(int i, int j) const;
    /// Site probability of the state normalized to unit norm.
    double site_probability(int i, int j) const;
};

/// Largest residual among the balance and phase constraints that every
/// stationary cell satisfies (magnitude sums and the two conjugate products).
double cell_constraint_defect(const AmplitudeCell &cell);

struct StationaryPair {
    AmplitudeCell cell;
    AmplitudeCell partner;
};

/// Closed-form stationary cell of a family coin and its chiral partner.
StationaryPair stationary_cell(const FamilyParams &p);

/// A, B with C A = lambda B for a cell with eigenphase lambda.
struct BalanceMatrices {
    Matrix4 A;
    Matrix4 B;
};

BalanceMatrices balance_matrices(const AmplitudeCell &cell);

}  // namespace trapwalk
