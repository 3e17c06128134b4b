// Copyright 2026 The Bandage Authors
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


// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "bandage/circuit.h"
#include "bandage/ensemble.h"
#include "bandage/logical.h"
#include "bandage/patch.h"
#include "bandage/verify.h"

using namespace bandage;

namespace {

const EnsembleSpec kSpec{21, 0.02, 0.02, 32, 0, MethodChoice::Both};

void BM_ensemble_parallel(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ensemble(kSpec));
    }
}

void BM_ensemble_serial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ensemble_serial(kSpec));
    }
}

const Circuit &memory_circuit() {
    static const Circuit c = [] {
        Lattice lat(11);
        DefectMap defects = inject_defects(lat, 0.01, 0.01, 3);
        NodeStatus status = adapt(lat, defects, Method::Bandage);
        Patch patch = build_patch(lat, status);
        return emit_memory_circuit({lat, status, patch}, ShellStrategy::global(2), PreparedState::Zero,
                                   NoiseParams{0.002}, 11);
    }();
    return c;
}

void BM_sample_parallel(benchmark::State &state) {
    const Circuit &c = memory_circuit();
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_frames(c, static_cast<size_t>(state.range(0)), 1));
    }
}

void BM_sample_serial(benchmark::State &state) {
    const Circuit &c = memory_circuit();
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_frames_serial(c, static_cast<size_t>(state.range(0)), 1));
    }
}

}  // namespace

BENCHMARK(BM_ensemble_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ensemble_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sample_parallel)->Arg(4096)->Arg(65536)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sample_serial)->Arg(4096)->Arg(65536)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
