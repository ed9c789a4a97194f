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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria, so ctest reports the run as failed if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../support.hpp"
#include "trapwalk/classify.hpp"
#include "trapwalk/coins.hpp"
#include "trapwalk/laurent.hpp"
#include "trapwalk/spectral.hpp"
#include "trapwalk/walk.hpp"

namespace {

using namespace trapwalk;
using testing_support::Sampler;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;

    // Records a failed check without stopping the criterion.
    void require(bool ok, const std::string &what) {
        if (ok) return;
        failures += (pass ? "" : "; ") + what;
        pass = false;
    }
};

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

FamilyParams draw(Sampler &s, int family, double margin) {
    switch (family) {
        case 0: return s.type_I(margin);
        case 1: return s.type_IIa(margin);
        default: return s.type_IIb(margin);
    }
}

double state_residual(const WalkState &next, const WalkState &psi, Complex lambda) {
    double res = 0.0;
    for (int y = -next.radius(); y <= next.radius(); ++y) {
        for (int x = -next.radius(); x <= next.radius(); ++x) {
            res = std::max(res, (next.local(x, y) - lambda * psi.local(x, y)).norm());
        }
    }
    return res;
}

void constructors(Outcome &o) {
    Stopwatch clock;
    Sampler s(1001);
    double unitarity = 0.0, balance = 0.0, gram = 0.0;
    for (int family = 0; family < 3; ++family) {
        for (int i = 0; i < 1000; ++i) {
            const FamilyParams p = draw(s, family, 1e-6);
            const Matrix4 c = make_coin(p);
            unitarity = std::max(unitarity, unitarity_defect(c));
            const StationaryPair pair = stationary_cell(p);
            for (const AmplitudeCell &z : {pair.cell, pair.partner}) {
                const BalanceMatrices m = balance_matrices(z);
                balance = std::max(balance, max_abs(c * m.A - z.eigenphase * m.B));
                gram = std::max(gram, max_abs(m.A.adjoint() * m.A - m.B.adjoint() * m.B));
            }
        }
    }
    const double t = clock.seconds();
    o.require(unitarity < 1e-12, "unitarity defect " + fmt(unitarity));
    o.require(balance < 1e-12, "C A - B " + fmt(balance));
    o.require(gram < 1e-12, "A'A - B'B " + fmt(gram));
    o.require(t < 5.0, "runtime " + fmt(t) + " s");
    o.detail << " max unitarity " << fmt(unitarity) << ", balance " << fmt(balance) << ", gram "
             << fmt(gram) << ", " << fmt(t) << " s";
}

void grover(Outcome &o) {
    TypeIIaParams p;
    p.delta1 = p.delta2 = p.delta3 = kPi / 4;
    p.eta = kPi;
    const Matrix4 c = coin_type_IIa(p);
    const double diff = max_abs(c - oracle::grover());
    o.require(diff < 1e-15, "matrix differs by " + fmt(diff));

    const PointSpectrum ps = detect_point_spectrum(c);
    bool plus = false, minus = false;
    for (const auto &e : ps.phases) {
        plus |= std::abs(e.value - 1.0) < 1e-10;
        minus |= std::abs(e.value + 1.0) < 1e-10;
    }
    o.require(ps.phases.size() == 2 && plus && minus, "point spectrum is not {+1, -1}");

    const MatrixX esc = escaping_subspace(c);
    o.require(esc.cols() == 1, "escaping dimension " + std::to_string(esc.cols()));
    if (esc.cols() == 1) {
        const Vector4 expect = Vector4(1, -1, -1, 1) / 2.0;
        const Complex overlap = expect.dot(esc.col(0));
        const double gap = (esc.col(0) - overlap / std::abs(overlap) * expect).norm();
        o.require(gap < 1e-10, "escaping state off by " + fmt(gap));
        o.detail << " matrix diff " << fmt(diff) << ", escaping state gap " << fmt(gap);
    }
}

void eigenstates(Outcome &o) {
    Sampler s(1003);
    double worst = 0.0;
    for (int family = 0; family < 3; ++family) {
        for (int i = 0; i < 50; ++i) {
            const FamilyParams p = draw(s, family, 1e-6);
            const Matrix4 c = make_coin(p);
            const StationaryPair pair = stationary_cell(p);
            o.require(pair.partner.eigenphase == -pair.cell.eigenphase, "partner eigenphase sign");
            for (const AmplitudeCell &z : {pair.cell, pair.partner}) {
                const WalkState psi = stationary_state(z);
                worst = std::max(worst, state_residual(step(psi, c), psi, z.eigenphase));
            }
        }
    }
    o.require(worst < 1e-12, "residual " + fmt(worst));
    o.detail << " max residual " << fmt(worst);
}

void classification(Outcome &o) {
    Stopwatch clock;
    Sampler s(1004);
    const Family expect_family[3] = {Family::TypeI, Family::TypeIIa, Family::TypeIIb};
    const int expect_rank[3] = {4, 3, 2};
    int wrong = 0;
    for (int family = 0; family < 3; ++family) {
        for (int i = 0; i < 1000; ++i) {
            const FamilyParams p = draw(s, family, 0.05);
            const ClassificationResult r = classify_coin(make_coin(p));
            if (r.family != expect_family[family] || r.rank_of_A != expect_rank[family]) {
                if (wrong < 3) {
                    o.detail << " [" << family_label(p) << " draw " << i << " -> "
                             << family_name(r.family) << "]";
                }
                ++wrong;
            }
        }
    }
    const ClassificationResult h = classify_coin(oracle::hadamard2());
    const double t = clock.seconds();
    o.require(wrong == 0, std::to_string(wrong) + " misclassified");
    o.require(h.family == Family::NotTrapping, "Hadamard (x) Hadamard reported trapping");
    o.require(t < 30.0, "runtime " + fmt(t) + " s");
    o.detail << " 3000 draws, " << wrong << " wrong, " << fmt(t) << " s";
}

bool within(const DegreeWindow &s, int xlo, int xhi, int ylo, int yhi) {
    return s.x_min >= xlo && s.x_max <= xhi && s.y_min >= ylo && s.y_max <= yhi;
}

void solver(Outcome &o) {
    Sampler s(1005);
    double worst = 0.0;
    int adjugate_checked = 0, degenerate = 0;
    for (int family = 0; family < 3; ++family) {
        for (int i = 0; i < 100; ++i) {
            const Matrix4 c = make_coin(draw(s, family, 0.05));
            for (const auto &ph : detect_point_spectrum(c).phases) {
                const AmplitudeCell z = localized_eigenstate(c, ph.value);
                const LaurentMatrix d = build_D(c * std::conj(ph.value));
                worst = std::max(worst, ansatz_residual(d, ansatz_from_cell(z)));

                LaurentVector w3, w4;
                try {
                    w3 = adjugate_kernel_vector(d, U);
                    w4 = adjugate_kernel_vector(d, R);
                } catch (const Error &e) {
                    if (e.kind() != ErrorKind::DegenerateMinor) throw;
                    ++degenerate;
                    continue;
                }
                ++adjugate_checked;
                const LaurentVector d3 = multiply(d, w3), d4 = multiply(d, w4);
                for (int j = 0; j < 4; ++j) {
                    o.require(is_identically_zero(d3[j]) && is_identically_zero(d4[j]),
                              "D w is not identically zero");
                    o.require(within(w4[j].support(), 0, 1, -1, 1), "w4 degree bound");
                    o.require(within(w3[j].support(), -1, 1, 0, 1), "w3 degree bound");
                    for (int l = 0; l < 4; ++l) {
                        o.require(is_identically_zero(w3[j] * w4[l] - w3[l] * w4[j]),
                                  "proportionality identity");
                    }
                }
                if (!o.pass) return;
            }
        }
    }
    o.require(worst < 1e-9, "kernel residual " + fmt(worst));
    o.require(adjugate_checked > 0, "no nondegenerate minors checked");
    o.detail << " max residual " << fmt(worst) << ", adjugate pairs checked " << adjugate_checked
             << ", degenerate-minor cases " << degenerate;
}

TypeIParams fig2_params() {
    TypeIParams p;
    p.delta1 = kPi / 3;
    p.delta2 = kPi / 4;
    return p;
}

void fig2_geometry(Outcome &o) {
    const SpreadRegion r = spread_region(dispersion_spec(fig2_params()));
    const double formula = kPi / 6 + std::sqrt(3.0) * kPi / 8;
    const double expect[7] = {1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0.5, std::sqrt(3.0) / 2,
                              1 / (2 * std::sqrt(2.0)), kPi / 3, kPi / 2};
    const double got[7] = {r.a1, r.b1, r.a2, r.b2, r.vx_int, r.theta1, r.theta2};
    const char *names[7] = {"a1", "b1", "a2", "b2", "vx_int", "theta1", "theta2"};
    for (int i = 0; i < 7; ++i) {
        o.require(std::abs(got[i] - expect[i]) < 1e-12, std::string(names[i]) + " = " + fmt(got[i]));
    }
    o.require(std::abs(r.S - formula) < 1e-12, "S differs from formula");
    const double brute = oracle::ellipse_intersection_area(r.a1, r.b1, r.a2, r.b2);
    const double rel = std::abs(r.S - brute) / brute;
    o.require(rel < 1e-6, "numeric integration differs by " + fmt(rel));
    o.detail << " S = " << r.S << ", brute-force relative gap " << fmt(rel);
}

double coverage_after(const Matrix4 &c, const Vector4 &init, const SpreadRegion &region, int steps) {
    const Trajectory t = simulate(c, initial_state(init), steps, {steps});
    return coverage_fraction(t.snapshots.at(steps), region, 1.05, 1e-5);
}

void fig2_dynamics(Outcome &o) {
    Stopwatch clock;
    Vector4 init;
    init << 0.5, Complex(0, 0.5), Complex(0, 0.5), 0.5;
    const TypeIParams p = fig2_params();
    const double outside = coverage_after(coin_type_I(p), init, spread_region(dispersion_spec(p)), 50);
    const double t = clock.seconds();
    o.require(outside < 1e-4, "mass outside inflated region " + fmt(outside));
    o.require(t < 10.0, "runtime " + fmt(t) + " s");
    o.detail << " outside mass " << fmt(outside) << ", " << fmt(t) << " s";
}

void fig4_dynamics(Outcome &o) {
    TypeIIaParams p;
    p.delta1 = kPi / 6;
    p.delta2 = p.delta3 = kPi / 4;
    p.eta = kPi;
    const Matrix4 c = coin_type_IIa(p);
    const SpreadRegion r = spread_region(dispersion_spec(p));
    o.require(r.coincident, "ellipses not coincident");
    o.require(std::abs(r.a1 - std::sqrt(3.0) / 2) < 1e-12 && std::abs(r.b1 - 0.5) < 1e-12,
              "semi-axes " + fmt(r.a1) + ", " + fmt(r.b1));
    const MatrixX esc = escaping_subspace(c);
    if (esc.cols() != 1) {
        o.require(false, "escaping dimension " + std::to_string(esc.cols()));
        return;
    }
    const double outside = coverage_after(c, esc.col(0), r, 50);
    o.require(outside < 1e-4, "mass outside inflated region " + fmt(outside));
    const double avg = origin_time_average(simulate(c, initial_state(esc.col(0)), 200));
    o.require(avg < 1e-3, "200-step origin average " + fmt(avg));
    o.detail << " outside mass " << fmt(outside) << ", origin average " << fmt(avg);
}

void fig6_dynamics(Outcome &o) {
    TypeIIbParams p;
    p.variant = 1;
    p.delta = kPi / 4;
    const Matrix4 c = coin_type_IIb(p);
    Vector4 init;
    init << 0.5, 0.5, 0.5, Complex(0, 0.5);
    WalkState state = initial_state(init);
    double off_strip = 0.0;
    for (int t = 1; t <= 100; ++t) {
        state = step(state, c);
        for (int y = -state.radius(); y <= state.radius(); ++y) {
            if (std::abs(y) < 2) continue;
            for (int x = -state.radius(); x <= state.radius(); ++x) {
                for (int k = 0; k < 4; ++k) off_strip = std::max(off_strip, std::abs(state.amplitude(x, y, k)));
            }
        }
    }
    const double edge = 1.05 * 100 * std::cos(p.delta) + 5;
    double beyond = 0.0;
    for (int y = -state.radius(); y <= state.radius(); ++y) {
        for (int x = -state.radius(); x <= state.radius(); ++x) {
            if (std::abs(x) > edge) beyond += state.probability(x, y);
        }
    }
    o.require(off_strip < 1e-14, "amplitude at |y| >= 2 is " + fmt(off_strip));
    o.require(beyond < 1e-3, "mass past light cone " + fmt(beyond));
    o.detail << " max |amp| off strip " << fmt(off_strip) << ", mass beyond cone " << fmt(beyond);
}

void spectral(Outcome &o) {
    Sampler s(1010);
    double eig_gap = 0.0, vel_gap = 0.0;
    const int n = 64;
    const double h = 1e-5;
    for (int family = 0; family < 3; ++family) {
        const FamilyParams p = draw(s, family, 0.05);
        const Matrix4 c = make_coin(p);
        const DispersionSpec spec = dispersion_spec(p);
        const PointSpectrum ps = detect_point_spectrum(c);
        for (const SpectrumSample &sm : spectrum_grid(spec, n)) {
            const MomentumPoint k{sm.kx, sm.ky};
            std::vector<Complex> expected;
            for (const auto &e : ps.phases) {
                for (int m = 0; m < e.multiplicity; ++m) expected.push_back(e.value);
            }
            expected.push_back(std::polar(1.0, spec.beta + sm.omega));
            expected.push_back(std::polar(1.0, spec.beta - sm.omega));
            if (expected.size() != 4) {
                o.require(false, "flat plus dispersive bands do not add up to four");
                return;
            }
            for (Complex ev : oracle::eigenvalues(momentum_operator(c, k))) {
                double best = 1e9;
                for (Complex e : expected) best = std::min(best, std::abs(ev - e));
                eig_gap = std::max(eig_gap, best);
            }
            if (std::isnan(sm.vx)) continue;
            const double fx = (omega(spec, {k.kx + h, k.ky}) - omega(spec, {k.kx - h, k.ky})) / (2 * h);
            const double fy = (omega(spec, {k.kx, k.ky + h}) - omega(spec, {k.kx, k.ky - h})) / (2 * h);
            vel_gap = std::max({vel_gap, std::abs(sm.vx - fx), std::abs(sm.vy - fy)});
        }
    }
    o.require(eig_gap < 1e-9, "eigenphase mismatch " + fmt(eig_gap));
    o.require(vel_gap < 1e-6, "group velocity mismatch " + fmt(vel_gap));
    o.detail << " eigenphase gap " << fmt(eig_gap) << ", velocity gap " << fmt(vel_gap);
}

void strong_trapping(Outcome &o) {
    Sampler s(1011);
    const Matrix4 c = coin_type_I(fig2_params());
    const auto g = origin_propagator(c, 100);
    const Matrix4 w = trapped_weight_operator(c);
    double min_avg = 1.0, max_gap = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Vector4 psi = s.unit_vector();
        double avg = 0.0;
        for (int t = 1; t <= 100; ++t) avg += (g[t] * psi).squaredNorm();
        avg /= 100;
        const double predicted = psi.dot(w * psi).real();
        min_avg = std::min(min_avg, avg);
        max_gap = std::max(max_gap, std::abs(avg - predicted));
    }
    o.require(min_avg > 1e-4, "smallest origin average " + fmt(min_avg));
    o.require(max_gap < 5e-2, "prediction gap " + fmt(max_gap));
    o.detail << " min origin average " << fmt(min_avg) << ", max gap to prediction " << fmt(max_gap);
}

double confinement(const Matrix4 &c, const Vector4 &psi, int steps) {
    WalkState state = initial_state(psi);
    double worst = 0.0;
    for (int t = 1; t <= steps; ++t) {
        state = step(state, c);
        worst = std::max(worst, state.max_amplitude_beyond(1));
    }
    return worst;
}

void degenerate(Outcome &o) {
    Sampler s(1012);
    TypeIParams t1;
    t1.delta1 = kPi / 2;
    t1.delta2 = 0.0;
    const Matrix4 c1 = coin_type_I(t1);
    const PointSpectrum ps = detect_point_spectrum(c1);
    const Complex quartic[4] = {1.0, kI, -1.0, -kI};
    bool all_found = ps.phases.size() == 4;
    for (Complex q : quartic) {
        bool found = false;
        for (const auto &e : ps.phases) found |= std::abs(e.value - q) < 1e-10;
        all_found &= found;
    }
    o.require(all_found, "point spectrum is not {1, i, -1, -i}");
    double ret = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Vector4 psi = i < 4 ? Vector4(Vector4::Unit(i)) : s.unit_vector();
        ret = std::max(ret, std::abs(simulate(c1, initial_state(psi), 4).origin_probability[4] - 1.0));
    }
    o.require(ret < 1e-12, "4-step return misses by " + fmt(ret));

    std::vector<Matrix4> coins;
    for (double d : {0.0, kPi / 2}) {
        TypeIIaParams p = s.type_IIa();
        p.delta2 = p.delta3 = d;
        coins.push_back(coin_type_IIa(p));
    }
    TypeIIbParams p3 = s.type_IIb();
    p3.delta = kPi / 2;
    coins.push_back(coin_type_IIb(p3));
    double leak = 0.0;
    for (const Matrix4 &c : coins) {
        o.require(classify_coin(c).fully_trapped, "coin not reported fully trapped");
        for (int i = 0; i < 8; ++i) {
            const Vector4 psi = i < 4 ? Vector4(Vector4::Unit(i)) : s.unit_vector();
            leak = std::max(leak, confinement(c, psi, 100));
        }
    }
    o.require(leak < 1e-12, "amplitude beyond radius 1: " + fmt(leak));
    o.detail << " return defect " << fmt(ret) << ", max amplitude beyond radius 1 " << fmt(leak);
}

void area(Outcome &o) {
    Stopwatch clock;
    const AreaSweep a = area_sweep(50);
    const double t = clock.seconds();
    int best = -1;
    double asym = 0.0;
    for (int i = 0; i < a.n; ++i) {
        for (int j = 0; j < a.n; ++j) {
            const double v = a.S[i * a.n + j];
            if (std::isnan(v)) continue;
            if (best < 0 || v > a.S[best]) best = i * a.n + j;
            asym = std::max(asym, std::abs(v - a.S[j * a.n + i]));
        }
    }
    const double d1 = a.delta1[best / a.n], d2 = a.delta2[best % a.n];
    const double off = std::hypot(d1 - kPi / 4, d2 - kPi / 4);
    o.require(t < 10.0, "runtime " + fmt(t) + " s");
    o.require(off < 0.1, "argmax at (" + fmt(d1) + ", " + fmt(d2) + ")");
    o.require(asym < 1e-12, "asymmetry " + fmt(asym));
    o.detail << " argmax (" << fmt(d1) << ", " << fmt(d2) << "), asymmetry " << fmt(asym) << ", "
             << fmt(t) << " s";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria = {
        {"constructor correctness", constructors},
        {"Grover reproduction", grover},
        {"eigenstate residuals", eigenstates},
        {"classification round-trip", classification},
        {"localized eigenstate solver", solver},
        {"Type I spreading geometry", fig2_geometry},
        {"Type I spreading dynamics", fig2_dynamics},
        {"coincident-ellipse escaping dynamics", fig4_dynamics},
        {"one-dimensional strip dynamics", fig6_dynamics},
        {"spectral consistency", spectral},
        {"strong trapping", strong_trapping},
        {"degenerate cases", degenerate},
        {"area sweep", area},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception &e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %2zu %s:%s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), o.detail.str().c_str(), o.pass ? "" : " | ",
                    o.failures.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
