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

#include "trapwalk/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "kernels.hpp"
#include "trapwalk/spectral.hpp"

namespace trapwalk {

int PointSpectrum::total_multiplicity() const {
    int total = 0;
    for (const auto &p : phases) total += p.multiplicity;
    return total;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::NotTrapping: return "NotTrapping";
        case Family::TypeI: return "TypeI";
        case Family::TypeIIa: return "TypeIIa";
        case Family::TypeIIb: return "TypeIIb";
        case Family::DirectSumDegenerate: return "DirectSumDegenerate";
    }
    return "Unknown";
}

PointSpectrum detect_point_spectrum(const Matrix4 &coin, int n_samples, std::uint64_t seed,
                                    double cluster_tol) {
    if (n_samples < 4) {
        throw Error(ErrorKind::InvalidInput, "detect_point_spectrum needs at least 4 samples");
    }
    if (!(cluster_tol > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "cluster tolerance must be positive");
    }

    std::vector<MomentumPoint> ks{{0.0, 0.0}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int s = 0; s < n_samples; ++s) {
        const double kx = angle(rng);
        const double ky = angle(rng);
        ks.push_back({kx, ky});
    }

    std::vector<std::array<Complex, 4>> spectra;
    for (const MomentumPoint &k : ks) {
        const auto pairs = eig_unitary4(momentum_operator(coin, k));
        spectra.push_back({pairs[0].value, pairs[1].value, pairs[2].value, pairs[3].value});
    }

    // Candidate clusters from k = (0, 0).
    std::vector<PointEigenphase> candidates;
    for (const Complex &lam : spectra[0]) {
        bool merged = false;
        for (auto &c : candidates) {
            if (std::abs(c.value - lam) < cluster_tol) {
                ++c.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) candidates.push_back({lam / std::abs(lam), 1});
    }

    PointSpectrum out;
    for (auto &c : candidates) {
        for (size_t s = 1; s < spectra.size(); ++s) {
            int count = 0;
            for (const Complex &mu : spectra[s]) {
                const double dist = std::abs(mu - c.value);
                if (dist < cluster_tol) ++count;
                if (dist > cluster_tol / 10 && dist < cluster_tol * 10) out.near_tolerance = true;
            }
            c.multiplicity = std::min(c.multiplicity, count);
        }
        if (c.multiplicity > 0) out.phases.push_back(c);
    }
    std::sort(out.phases.begin(), out.phases.end(),
              [](const PointEigenphase &a, const PointEigenphase &b) {
                  return std::arg(a.value) < std::arg(b.value);
              });
    return out;
}

bool equal_up_to_phase(const Matrix4 &a, const Matrix4 &b, double tol) {
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) == 0.0 || std::abs(a(r, c)) == 0.0) {
        return max_abs(a - b) < tol;
    }
    const Complex rot = a(r, c) / b(r, c);
    return max_abs(a - (rot / std::abs(rot)) * b) < tol;
}

namespace {

constexpr double kCaseTol = 1e-8;

double angle_of(Complex z) { return std::abs(z) > 1e-12 ? std::arg(z) : 0.0; }

double wrap_phase(double phi) {
    double w = std::fmod(phi, 2 * kPi);
    if (w < 0) w += 2 * kPi;
    // Round-off just below 2 pi reads better as 0.
    if (2 * kPi - w < 1e-12) w = 0.0;
    return w;
}

// Unit-modulus phase that makes `a` real and positive, if `a` is resolvable.
AmplitudeCell gauge_on_a(const AmplitudeCell &cell) {
    if (std::abs(cell.a) < 1e-10) return cell;
    const Complex rot = std::conj(cell.a) / std::abs(cell.a);
    auto amps = cell.amplitudes();
    for (Complex &z : amps) z *= rot;
    return AmplitudeCell::from_amplitudes(amps, cell.eigenphase, cell.convention);
}

void require_case(bool ok, const char *what) {
    if (!ok) {
        throw Error(ErrorKind::Inconsistency, std::string("cell violates the ") + what +
                                                  " magnitude equations");
    }
}

TypeIIbParams recover_IIb(const Matrix4 &c) {
    TypeIIbParams p;
    const bool horizontal_trap = std::abs(c(L, L)) < kCaseTol && std::abs(c(R, R)) < kCaseTol &&
                                 std::abs(c(L, R) * c(R, L) - 1.0) < kCaseTol;
    const bool vertical_trap = std::abs(c(D, D)) < kCaseTol && std::abs(c(U, U)) < kCaseTol &&
                               std::abs(c(D, U) * c(U, D) - 1.0) < kCaseTol;
    int p0 = L, p1 = R;
    if (vertical_trap) {
        p.variant = 1;
        p.gamma = angle_of(c(U, D));
    } else if (horizontal_trap) {
        p.variant = 2;
        p.phi_f = angle_of(c(R, L));
        p0 = D;
        p1 = U;
    } else {
        throw Error(ErrorKind::Inconsistency, "coin has no trapping one-dimensional block");
    }
    const Complex b00 = c(p0, p0), b01 = c(p0, p1), b10 = c(p1, p0), b11 = c(p1, p1);
    double varphi = 0.5 * std::arg(b00 * b11 - b01 * b10);
    if (varphi < 0) varphi += kPi;
    if (varphi >= kPi) varphi -= kPi;
    p.varphi = varphi;
    p.delta = std::atan2(std::abs(b01), std::abs(b00));
    p.alpha = std::abs(b00) > 1e-12 ? std::arg(b00) - varphi : 0.0;
    p.beta = std::abs(b01) > 1e-12 ? varphi - std::arg(b01) : 0.0;
    return p;
}

}  // namespace

FamilyParams recover_parameters(const AmplitudeCell &raw, Family family,
                                const std::optional<Matrix4> &coin) {
    const double n2 = raw.norm_squared();
    if (!(n2 > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "cannot recover parameters from an all-zero cell");
    }
    const auto m = [](Complex z) { return std::abs(z); };

    if (family == Family::TypeI) {
        const AmplitudeCell z = gauge_on_a(raw.normalized(NormConvention::TypeI));
        const double s = 2.0;
        require_case(std::abs(m(z.a) - m(z.h)) < kCaseTol * s &&
                         std::abs(m(z.c) - m(z.f)) < kCaseTol * s &&
                         std::abs(m(z.g) - m(z.b)) < kCaseTol * s &&
                         std::abs(m(z.d) - m(z.e)) < kCaseTol * s,
                     "Type I");
        TypeIParams p;
        p.delta1 = std::atan2(m(z.a), m(z.b));
        p.delta2 = std::atan2(m(z.c), m(z.d));
        p.phi_d = wrap_phase(angle_of(z.d));
        p.phi_e = wrap_phase(angle_of(z.e));
        p.phi_f = wrap_phase(angle_of(z.f));
        p.phi_g = wrap_phase(angle_of(z.g));
        p.phi_h = wrap_phase(angle_of(z.h));
        return p;
    }

    if (family == Family::TypeIIa) {
        if (!coin) {
            throw Error(ErrorKind::InvalidInput, "Type IIa recovery needs the coin to fix eta");
        }
        const AmplitudeCell z = gauge_on_a(raw.normalized(NormConvention::CaseII));
        const double s = std::sqrt(2.0);
        require_case(std::abs(m(z.a) - m(z.f)) < kCaseTol * s &&
                         std::abs(m(z.c) - m(z.h)) < kCaseTol * s &&
                         std::abs(m(z.b) - m(z.d)) < kCaseTol * s &&
                         std::abs(m(z.g) - m(z.e)) < kCaseTol * s,
                     "case II");
        TypeIIaParams p;
        p.delta1 = std::atan2(std::hypot(m(z.a), m(z.c)), std::hypot(m(z.b), m(z.e)));
        p.delta3 = std::atan2(m(z.a), m(z.c));
        p.delta2 = std::atan2(m(z.b), m(z.e));
        p.phi_d = wrap_phase(angle_of(z.d));
        p.phi_e = wrap_phase(angle_of(z.e));
        p.phi_f = wrap_phase(angle_of(z.f));
        p.phi_g = wrap_phase(angle_of(z.g));
        p.phi_h = wrap_phase(angle_of(z.h));

        const Matrix4 shifted = std::conj(raw.eigenphase) * (*coin);
        const Vector4 k = type_IIa_kernel_state(p);
        const Complex overlap = (type_IIa_reflection_part(p) * k).dot(shifted * k);
        if (std::abs(std::abs(overlap) - 1.0) > 1e-6) {
            throw Error(ErrorKind::Inconsistency,
                        "coin does not act as a phase on the escaping direction");
        }
        p.eta = std::arg(overlap);
        if (p.eta == -kPi) p.eta = kPi;
        return p;
    }

    if (family == Family::TypeIIb) {
        if (!coin) {
            throw Error(ErrorKind::InvalidInput, "Type IIb recovery reads the coin entries");
        }
        return recover_IIb(std::conj(raw.eigenphase) * (*coin));
    }

    throw Error(ErrorKind::InvalidInput,
                "parameters can only be recovered for Type I, IIa and IIb families");
}

namespace {

struct BandSet {
    PointSpectrum spectrum;
    std::vector<kernels::FlatBand> bands;
};

BandSet collect_bands(const Matrix4 &coin, const ClassifyOptions &opts) {
    BandSet out;
    out.spectrum = detect_point_spectrum(coin, opts.n_samples, opts.seed, opts.cluster_tol);
    if (out.spectrum.phases.empty()) {
        throw Error(ErrorKind::NotTrapping, "coin has no constant eigenvalue");
    }
    for (const auto &ph : out.spectrum.phases) {
        out.bands.push_back(localized_eigenstates(coin, ph.value));
    }
    return out;
}

MatrixX escaping_from_bands(const std::vector<kernels::FlatBand> &bands, double rank_tol) {
    int cols = 0;
    for (const auto &band : bands) cols += 4 * static_cast<int>(band.size());
    MatrixX stacked(4, cols);
    int at = 0;
    for (const auto &band : bands) {
        for (const auto &cell : band) {
            stacked.middleCols(at, 4) = balance_matrices(cell).A;
            at += 4;
        }
    }
    return numerical_rank(stacked, rank_tol).adjoint_kernel;
}

Complex seed_eigenphase(const std::vector<PointEigenphase> &phases) {
    // Smallest argument in [0, pi); the +- pairing guarantees one exists.
    for (const auto &p : phases) {
        const double a = std::arg(p.value);
        if (a >= -1e-12 && a < kPi - 1e-12) return p.value;
    }
    return phases.front().value;
}

}  // namespace

MatrixX escaping_subspace(const Matrix4 &coin, const ClassifyOptions &opts) {
    const BandSet set = collect_bands(coin, opts);
    return escaping_from_bands(set.bands, opts.rank_tol);
}

ClassificationResult classify_coin(const Matrix4 &coin, const ClassifyOptions &opts) {
    const double defect = unitarity_defect(coin);
    if (defect >= kUnitarityTol) {
        std::ostringstream msg;
        msg << "coin is not unitary (defect " << defect << ")";
        throw Error(ErrorKind::Precondition, msg.str());
    }
    ClassificationResult res;
    const PointSpectrum spectrum =
        detect_point_spectrum(coin, opts.n_samples, opts.seed, opts.cluster_tol);
    res.eigenphases = spectrum.phases;
    res.near_tolerance = spectrum.near_tolerance;
    if (spectrum.phases.empty()) {
        res.family = Family::NotTrapping;
        return res;
    }
    res.trapping = true;
    res.fully_trapped = spectrum.total_multiplicity() == 4;

    std::vector<kernels::FlatBand> bands;
    for (const auto &ph : spectrum.phases) {
        bands.push_back(localized_eigenstates(coin, ph.value));
    }
    res.escaping_dimension = static_cast<int>(escaping_from_bands(bands, opts.rank_tol).cols());

    res.seed_eigenphase = seed_eigenphase(spectrum.phases);
    const AmplitudeCell cell = localized_eigenstate(coin, res.seed_eigenphase);
    const int rank = numerical_rank(balance_matrices(cell).A, opts.rank_tol).rank;
    res.rank_of_A = rank;

    const bool repeated = std::any_of(spectrum.phases.begin(), spectrum.phases.end(),
                                      [](const PointEigenphase &p) { return p.multiplicity > 1; });
    if (repeated) {
        res.family = Family::DirectSumDegenerate;
        return res;
    }

    if (rank == 4) {
        res.family = Family::TypeI;
    } else if (rank == 3) {
        res.family = Family::TypeIIa;
    } else if (rank == 2) {
        res.family = Family::TypeIIb;
        const double tol = 1e-8;
        if (std::abs(cell.a) < tol && std::abs(cell.c) < tol && std::abs(cell.f) < tol &&
            std::abs(cell.h) < tol) {
            res.iib_variant = 1;
        } else if (std::abs(cell.b) < tol && std::abs(cell.d) < tol && std::abs(cell.e) < tol &&
                   std::abs(cell.g) < tol) {
            res.iib_variant = 2;
        } else {
            throw Error(ErrorKind::Inconsistency, "rank-2 cell is not quasi one-dimensional");
        }
    } else {
        throw Error(ErrorKind::Inconsistency, "localized cell has rank below 2");
    }

    try {
        const FamilyParams params = recover_parameters(cell, res.family, coin);
        const Matrix4 rebuilt = make_coin(params);
        if (equal_up_to_phase(coin, rebuilt, 1e-9)) {
            res.recovered_params = params;
        }
    } catch (const Error &) {
        // Boundary cells (vanishing amplitudes) need not map back to valid
        // parameters; the classification itself stands.
    }
    return res;
}

Matrix4 trapped_weight_operator(const Matrix4 &coin, int k_grid, const ClassifyOptions &opts) {
    if (k_grid < 4) throw Error(ErrorKind::InvalidInput, "k grid must have at least 4 points");
    const BandSet set = collect_bands(coin, opts);
    return kernels::origin_weight_omp(set.bands, k_grid);
}

namespace reference {
Matrix4 trapped_weight_operator(const Matrix4 &coin, int k_grid, const ClassifyOptions &opts) {
    if (k_grid < 4) throw Error(ErrorKind::InvalidInput, "k grid must have at least 4 points");
    const BandSet set = collect_bands(coin, opts);
    return kernels::origin_weight_serial(set.bands, k_grid);
}
}  // namespace reference

double trapped_weight(const Matrix4 &coin, const Vector4 &initial, int k_grid,
                      const ClassifyOptions &opts) {
    if (std::abs(initial.squaredNorm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::InvalidInput, "initial coin state must be normalized");
    }
    const Matrix4 w = trapped_weight_operator(coin, k_grid, opts);
    return std::clamp(initial.dot(w * initial).real(), 0.0, 1.0);
}

}  // namespace trapwalk
