// Copyright 2026 The hamfex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial vs OpenMP amplitude kernels, and whole-molecule extraction, over
// qubit counts. Run with OMP_NUM_THREADS to pick the thread count.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "hamfex/kernels.hpp"
#include "hamfex/qsim.hpp"

namespace {

using hamfex::kernels::Amplitude;
using hamfex::kernels::PhaseTerm;

std::vector<Amplitude> uniform_state(std::size_t n) {
    const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
    return std::vector<Amplitude>(std::size_t{1} << n, {a, 0.0});
}

/// n linear terms plus 30 pairs and 10 triads on fixed qubits.
std::vector<PhaseTerm> molecule_terms(std::size_t n) {
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<PhaseTerm> terms;
    for (std::size_t q = 0; q < n; ++q) terms.push_back({std::uint64_t{1} << q, 1.0});
    for (int p = 0; p < 30; ++p) terms.push_back({(std::uint64_t{1} << pick(rng)) | (std::uint64_t{1} << pick(rng)), 0.5});
    for (int t = 0; t < 10; ++t) {
        terms.push_back(
            {(std::uint64_t{1} << pick(rng)) | (std::uint64_t{1} << pick(rng)) | (std::uint64_t{1} << pick(rng)), 0.25});
    }
    return terms;
}

template <auto Kernel>
void BM_phase(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto amps = uniform_state(n);
    const auto terms = molecule_terms(n);
    for (auto _ : state) {
        Kernel(amps, terms, 0.5, 1);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <auto Kernel>
void BM_hadamard(benchmark::State& state) {
    auto amps = uniform_state(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Kernel(amps);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <auto Kernel>
void BM_expectations(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto amps = uniform_state(n);
    std::vector<std::uint64_t> masks;
    for (const auto& t : molecule_terms(n)) masks.push_back(t.mask);
    std::vector<double> out(masks.size());
    for (auto _ : state) {
        Kernel(amps, masks, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

void BM_extract(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto backend = state.range(1) == 0 ? hamfex::qsim::Backend::serial : hamfex::qsim::Backend::omp;
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    hamfex::selection::CouplingTable table;
    while (table.pairs.size() < 30) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        bool seen = false;
        for (const auto& p : table.pairs) seen = seen || (p.i == i && p.j == j);
        if (!seen) table.pairs.push_back({i, j, 0.5});
    }
    for (std::size_t t = 0; t < 10; ++t) table.triads.push_back({t % n, (t + 1) % n, (t + 2) % n, 0.25});
    std::vector<std::size_t> cols(n);
    for (std::size_t q = 0; q < n; ++q) cols[q] = q;
    const hamfex::selection::QubitMap map(cols);
    std::vector<std::uint8_t> bits(n);
    for (std::size_t q = 0; q < n; ++q) bits[q] = q % 2;
    hamfex::qsim::SimulationConfig cfg;
    cfg.backend = backend;
    for (auto _ : state) benchmark::DoNotOptimize(hamfex::qsim::extract_features(bits, table, map, cfg));
    state.SetLabel(state.range(1) == 0 ? "serial" : "omp");
}

namespace k = hamfex::kernels;

BENCHMARK(BM_phase<k::serial::diagonal_phase>)->Name("phase/serial")->DenseRange(14, 22, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_phase<k::omp::diagonal_phase>)->Name("phase/omp")->DenseRange(14, 22, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hadamard<k::serial::walsh_hadamard>)->Name("hadamard/serial")->DenseRange(14, 22, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hadamard<k::omp::walsh_hadamard>)->Name("hadamard/omp")->DenseRange(14, 22, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expectations<k::serial::z_expectations>)->Name("expect/serial")->DenseRange(14, 22, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expectations<k::omp::z_expectations>)->Name("expect/omp")->DenseRange(14, 22, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_extract)->ArgsProduct({{16, 18, 20}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
