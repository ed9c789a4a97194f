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


// Seeded parameter samplers shared by the unit and acceptance suites.

#pragma once

#include <cstdint>
#include <random>

#include "trapwalk/coins.hpp"

namespace testing_support {

using trapwalk::kPi;

class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    double phase() { return uniform(0.0, 2 * kPi); }

    /// Angles keep `margin` away from 0, pi/2 and from each other.
    trapwalk::TypeIParams type_I(double margin = 0.05) {
        trapwalk::TypeIParams p;
        do {
            p.delta1 = uniform(margin, kPi / 2 - margin);
            p.delta2 = uniform(margin, kPi / 2 - margin);
        } while (std::abs(p.delta1 - p.delta2) < margin);
        p.phi_d = phase();
        p.phi_e = phase();
        p.phi_f = phase();
        p.phi_g = phase();
        p.phi_h = phase();
        return p;
    }

    trapwalk::TypeIIaParams type_IIa(double margin = 0.05) {
        trapwalk::TypeIIaParams p;
        p.delta1 = uniform(margin, kPi / 2 - margin);
        p.delta2 = uniform(margin, kPi / 2 - margin);
        p.delta3 = uniform(margin, kPi / 2 - margin);
        do {
            p.eta = uniform(-kPi + margin, kPi);
        } while (std::abs(p.eta) < margin);
        p.phi_d = phase();
        p.phi_e = phase();
        p.phi_f = phase();
        p.phi_g = phase();
        p.phi_h = phase();
        return p;
    }

    trapwalk::TypeIIbParams type_IIb(double margin = 0.05) {
        trapwalk::TypeIIbParams p;
        p.variant = uniform(0.0, 1.0) < 0.5 ? 1 : 2;
        p.delta = uniform(margin, kPi / 2 - margin);
        p.varphi = uniform(0.0, kPi - margin);
        p.alpha = phase();
        p.beta = phase();
        p.gamma = phase();
        p.phi_f = phase();
        return p;
    }

    trapwalk::Vector4 unit_vector() {
        std::normal_distribution<double> normal(0.0, 1.0);
        trapwalk::Vector4 v;
        for (int c = 0; c < 4; ++c) v(c) = trapwalk::Complex(normal(rng_), normal(rng_));
        return v / v.norm();
    }

    std::mt19937_64 &engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace testing_support
