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

#include <map>
#include <vector>

#include "trapwalk/coins.hpp"
#include "trapwalk/numeric.hpp"
#include "trapwalk/spectral.hpp"

namespace trapwalk {

/// Amplitudes on the square window [-radius, radius]^2, four coin components
/// per site, stored row-major in y then x then component.
class WalkState {
  public:
    WalkState(int time, int radius);

    int time() const { return time_; }
    int radius() const { return radius_; }
    int width() const { return 2 * radius_ + 1; }

    /// Zero outside the window.
    Complex amplitude(int x, int y, int c) const;
    void set_amplitude(int x, int y, int c, Complex v);
    Vector4 local(int x, int y) const;
    double probability(int x, int y) const;
    double total_probability() const;
    /// Largest |amplitude| at sites with Chebyshev distance > r from the origin.
    double max_amplitude_beyond(int r) const;

    const std::vector<Complex> &data() const { return amps_; }
    std::vector<Complex> &data() { return amps_; }

    size_t index(int x, int y, int c) const {
        return (static_cast<size_t>(y + radius_) * width() + (x + radius_)) * 4 + c;
    }

  private:
    int time_;
    int radius_;
    std::vector<Complex> amps_;
};

/// All amplitude at the origin. Throws InvalidInput unless |psi| = 1 within 1e-12.
WalkState initial_state(const Vector4 &coin_state);

/// Cell placed on (0,0)..(1,1), scaled to unit norm.
WalkState stationary_state(const AmplitudeCell &cell);

/// One application of S (I x C); the window grows by one site per side.
WalkState step(const WalkState &state, const Matrix4 &coin);

struct Distribution {
    int time = 0;
    int radius = 0;
    std::vector<double> P;

    double at(int x, int y) const;
    double total() const;
};

Distribution distribution(const WalkState &state);

struct Trajectory {
    /// P(0,0,t) for t = 0..steps.
    std::vector<double> origin_probability;
    std::map<int, Distribution> snapshots;
    int steps = 0;
};

Trajectory simulate(const Matrix4 &coin, const WalkState &initial, int steps,
                    const std::vector<int> &snapshot_times = {});

/// (1/T) sum_{t=1..T} P(0,0,t).
double origin_time_average(const Trajectory &traj);

/// Share of the total probability on sites with P > floor that lie outside
/// the region rescaled by t * inflation, ignoring the 5x5 block at the origin.
double coverage_fraction(const Distribution &dist, const SpreadRegion &region, double inflation,
                         double floor);

/// G_t for t = 0..steps: the origin amplitude at time t is G_t psi for an
/// initial state psi at the origin.
std::vector<Matrix4> origin_propagator(const Matrix4 &coin, int steps);

namespace reference {
/// Literal two-pass step: coin at every site, then shift.
WalkState step(const WalkState &state, const Matrix4 &coin);
}  // namespace reference

}  // namespace trapwalk
