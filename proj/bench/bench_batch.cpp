/*
 * Copyright 2026 The cogame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Serial against OpenMP batch checking. Run with OMP_NUM_THREADS to vary
// the thread count.

#include "cogame/batch.hpp"
#include "cogame/random.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cogame;

const std::vector<ProfileGraph>& workload()
{
    static const std::vector<ProfileGraph> profiles = [] {
        std::mt19937_64 rng(2026);
        std::vector<ProfileGraph> out;
        for (int i = 0; i < 2000; ++i) {
            SchemaProfileOptions opt;
            opt.internal_nodes = 4 + rng() % 12;
            opt.leaves = 2 + rng() % 4;
            opt.max_delta = rng() % 3;
            opt.with_param = rng() % 2;
            out.push_back(random_schema_profile(rng, opt));
        }
        return out;
    }();
    return profiles;
}

template <BatchCheck C>
void serial(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(check_batch_serial(workload(), C));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(workload().size()));
}

template <BatchCheck C>
void parallel(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(check_batch_parallel(workload(), C));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(workload().size()));
    state.counters["threads"] = batch_threads();
}

BENCHMARK(serial<BatchCheck::Sgpe>)->Name("sgpe/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(parallel<BatchCheck::Sgpe>)->Name("sgpe/openmp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(serial<BatchCheck::Nash>)->Name("nash/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(parallel<BatchCheck::Nash>)->Name("nash/openmp")->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
