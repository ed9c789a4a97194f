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

#include "trapwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "kernels.hpp"

namespace trapwalk {

WalkState::WalkState(int time, int radius)
    : time_(time), radius_(radius), amps_(static_cast<size_t>(2 * radius + 1) * (2 * radius + 1) * 4) {
    if (radius < 0 || time < 0) {
        throw Error(ErrorKind::InvalidInput, "walk state needs non-negative time and radius");
    }
}

Complex WalkState::amplitude(int x, int y, int c) const {
    if (std::abs(x) > radius_ || std::abs(y) > radius_) return 0.0;
    return amps_[index(x, y, c)];
}

void WalkState::set_amplitude(int x, int y, int c, Complex v) {
    if (std::abs(x) > radius_ || std::abs(y) > radius_ || c < 0 || c > 3) {
        throw Error(ErrorKind::InvalidInput, "site outside the walk window");
    }
    amps_[index(x, y, c)] = v;
}

Vector4 WalkState::local(int x, int y) const {
    Vector4 v;
    for (int c = 0; c < 4; ++c) v(c) = amplitude(x, y, c);
    return v;
}

double WalkState::probability(int x, int y) const {
    double p = 0.0;
    for (int c = 0; c < 4; ++c) p += std::norm(amplitude(x, y, c));
    return p;
}

double WalkState::total_probability() const {
    double p = 0.0;
    for (const Complex &z : amps_) p += std::norm(z);
    return p;
}

double WalkState::max_amplitude_beyond(int r) const {
    double best = 0.0;
    for (int y = -radius_; y <= radius_; ++y) {
        for (int x = -radius_; x <= radius_; ++x) {
            if (std::max(std::abs(x), std::abs(y)) <= r) continue;
            for (int c = 0; c < 4; ++c) best = std::max(best, std::abs(amps_[index(x, y, c)]));
        }
    }
    return best;
}

WalkState initial_state(const Vector4 &coin_state) {
    for (int c = 0; c < 4; ++c) {
        if (!std::isfinite(coin_state(c).real()) || !std::isfinite(coin_state(c).imag())) {
            throw Error(ErrorKind::InvalidInput, "initial coin state has non-finite entries");
        }
    }
    const double n2 = coin_state.squaredNorm();
    if (std::abs(n2 - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "initial coin state must be normalized (|psi|^2 = " << n2 << ")";
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    WalkState s(0, 1);
    for (int c = 0; c < 4; ++c) s.set_amplitude(0, 0, c, coin_state(c));
    return s;
}

WalkState stationary_state(const AmplitudeCell &cell) {
    const double n2 = cell.norm_squared();
    if (!(n2 > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "stationary state of an all-zero cell");
    }
    const double scale = 1.0 / std::sqrt(n2);
    WalkState s(0, 1);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Vector4 v = cell.local_state(i, j) * scale;
            for (int c = 0; c < 4; ++c) s.set_amplitude(i, j, c, v(c));
        }
    }
    return s;
}

WalkState step(const WalkState &state, const Matrix4 &coin) {
    WalkState next(state.time() + 1, state.radius() + 1);
    kernels::walk_step_omp(state.data(), state.radius(), coin, next.data());
    return next;
}

namespace reference {
WalkState step(const WalkState &state, const Matrix4 &coin) {
    WalkState next(state.time() + 1, state.radius() + 1);
    kernels::walk_step_serial(state.data(), state.radius(), coin, next.data());
    return next;
}
}  // namespace reference

double Distribution::at(int x, int y) const {
    if (std::abs(x) > radius || std::abs(y) > radius) return 0.0;
    return P[static_cast<size_t>(y + radius) * (2 * radius + 1) + (x + radius)];
}

double Distribution::total() const {
    double t = 0.0;
    for (double p : P) t += p;
    return t;
}

Distribution distribution(const WalkState &state) {
    Distribution d;
    d.time = state.time();
    d.radius = state.radius();
    const int w = state.width();
    d.P.resize(static_cast<size_t>(w) * w);
    for (int y = -d.radius; y <= d.radius; ++y) {
        for (int x = -d.radius; x <= d.radius; ++x) {
            d.P[static_cast<size_t>(y + d.radius) * w + (x + d.radius)] = state.probability(x, y);
        }
    }
    return d;
}

Trajectory simulate(const Matrix4 &coin, const WalkState &initial, int steps,
                    const std::vector<int> &snapshot_times) {
    if (steps < 1) throw Error(ErrorKind::InvalidInput, "simulation needs at least one step");
    const double defect = unitarity_defect(coin);
    if (defect >= kUnitarityTol) {
        throw Error(ErrorKind::Precondition, "simulation requires a unitary coin");
    }
    for (int t : snapshot_times) {
        if (t < 0 || t > steps + initial.time()) {
            throw Error(ErrorKind::InvalidInput, "snapshot time outside the simulated range");
        }
    }
    const auto wanted = [&](int t) {
        return std::find(snapshot_times.begin(), snapshot_times.end(), t) != snapshot_times.end();
    };

    Trajectory traj;
    traj.steps = steps;
    traj.origin_probability.reserve(static_cast<size_t>(steps) + 1);
    WalkState state = initial;
    traj.origin_probability.push_back(state.probability(0, 0));
    if (wanted(state.time())) traj.snapshots.emplace(state.time(), distribution(state));
    for (int s = 0; s < steps; ++s) {
        state = step(state, coin);
        traj.origin_probability.push_back(state.probability(0, 0));
        if (wanted(state.time())) traj.snapshots.emplace(state.time(), distribution(state));
    }
    return traj;
}

double origin_time_average(const Trajectory &traj) {
    if (traj.steps < 1 || traj.origin_probability.size() < 2) {
        throw Error(ErrorKind::InvalidInput, "trajectory has no steps");
    }
    double sum = 0.0;
    for (size_t t = 1; t < traj.origin_probability.size(); ++t) sum += traj.origin_probability[t];
    return sum / static_cast<double>(traj.origin_probability.size() - 1);
}

double coverage_fraction(const Distribution &dist, const SpreadRegion &region, double inflation,
                         double floor) {
    if (dist.time < 1) throw Error(ErrorKind::InvalidInput, "coverage needs t >= 1");
    if (!(inflation >= 1.0)) throw Error(ErrorKind::InvalidInput, "inflation must be >= 1");
    const double total = dist.total();
    if (!(total > 0.0)) return 0.0;
    const double t = dist.time;
    double outside = 0.0;
    for (int y = -dist.radius; y <= dist.radius; ++y) {
        for (int x = -dist.radius; x <= dist.radius; ++x) {
            if (std::abs(x) <= 2 && std::abs(y) <= 2) continue;
            const double p = dist.at(x, y);
            if (p <= floor) continue;
            if (region_membership(region, x / t, y / t, inflation) > 1.0) outside += p;
        }
    }
    return outside / total;
}

std::vector<Matrix4> origin_propagator(const Matrix4 &coin, int steps) {
    if (steps < 0) throw Error(ErrorKind::InvalidInput, "steps must be non-negative");
    std::vector<Matrix4> g(static_cast<size_t>(steps) + 1, Matrix4::Zero());
    for (int c = 0; c < 4; ++c) {
        WalkState state = initial_state(Vector4::Unit(c));
        g[0].col(c) = state.local(0, 0);
        for (int t = 1; t <= steps; ++t) {
            state = step(state, coin);
            g[static_cast<size_t>(t)].col(c) = state.local(0, 0);
        }
    }
    return g;
}

}  // namespace trapwalk
