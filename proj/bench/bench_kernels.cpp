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


// OpenMP kernels against their serial references. Run with
// TRAPWALK_THREADS unset and compare the *_omp and *_serial rows.

#include <benchmark/benchmark.h>

#include "trapwalk/classify.hpp"
#include "trapwalk/spectral.hpp"
#include "trapwalk/walk.hpp"

namespace {

using namespace trapwalk;

Matrix4 fig2_coin() {
    TypeIParams p;
    p.delta1 = kPi / 3;
    p.delta2 = kPi / 4;
    return coin_type_I(p);
}

// A state spread to radius ~t so the step touches a realistic window.
WalkState spread_state(const Matrix4 &coin, int t) {
    Vector4 init;
    init << 0.5, Complex(0, 0.5), Complex(0, 0.5), 0.5;
    WalkState s = initial_state(init);
    for (int i = 0; i < t; ++i) s = step(s, coin);
    return s;
}

template <WalkState (*Step)(const WalkState &, const Matrix4 &)>
void BM_step(benchmark::State &state) {
    const Matrix4 coin = fig2_coin();
    const WalkState s = spread_state(coin, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Step(s, coin));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.width()) * s.width());
}
BENCHMARK(BM_step<trapwalk::step>)->Name("step_omp")->Arg(100)->Arg(400);
BENCHMARK(BM_step<trapwalk::reference::step>)->Name("step_serial")->Arg(100)->Arg(400);

template <AreaSweep (*Sweep)(int)>
void BM_area_sweep(benchmark::State &state) {
    for (auto _ : state) benchmark::DoNotOptimize(Sweep(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_area_sweep<trapwalk::area_sweep>)->Name("area_sweep_omp")->Arg(50)->Arg(200);
BENCHMARK(BM_area_sweep<trapwalk::reference::area_sweep>)->Name("area_sweep_serial")->Arg(50)->Arg(200);

template <Matrix4 (*Weight)(const Matrix4 &, int, const ClassifyOptions &)>
void BM_trapped_weight(benchmark::State &state) {
    const Matrix4 coin = fig2_coin();
    for (auto _ : state) benchmark::DoNotOptimize(Weight(coin, static_cast<int>(state.range(0)), {}));
}
BENCHMARK(BM_trapped_weight<trapwalk::trapped_weight_operator>)->Name("trapped_weight_omp")->Arg(128)->Arg(256);
BENCHMARK(BM_trapped_weight<trapwalk::reference::trapped_weight_operator>)
    ->Name("trapped_weight_serial")
    ->Arg(128)
    ->Arg(256);

}  // namespace

BENCHMARK_MAIN();
