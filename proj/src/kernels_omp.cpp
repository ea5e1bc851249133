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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hamfex/kernels.hpp"

namespace hamfex::kernels::omp {

namespace {

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

}  // namespace

void product_state(std::span<Amplitude> out, std::span<const double> zero, std::span<const double> one) {
    const auto n = static_cast<std::int64_t>(out.size());
    const std::size_t qubits = zero.size();
#pragma omp parallel for schedule(static) if (out.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto b = static_cast<std::uint64_t>(i);
        Amplitude v = 1.0;
        for (std::size_t q = 0; q < qubits; ++q) v *= ((b >> q) & 1U) ? one[q] : zero[q];
        out[b] = v;
    }
}

void diagonal_phase(std::span<Amplitude> amps, std::span<const PhaseTerm> terms, double dt, std::size_t steps) {
    const std::size_t blocks = block_count(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(blocks); ++blk) {
        const std::size_t start = static_cast<std::size_t>(blk) * kReductionBlock;
        const std::size_t len = std::min(amps.size() - start, kReductionBlock);
        // term-outer so the inner loop runs over contiguous indices
        double energy[kReductionBlock];
        std::fill(energy, energy + len, 0.0);
        for (const auto& t : terms) {
            for (std::size_t j = 0; j < len; ++j) energy[j] += t.coefficient * parity_sign(start + j, t.mask);
        }
        for (std::size_t j = 0; j < len; ++j) {
            const Amplitude phase(std::cos(dt * energy[j]), -std::sin(dt * energy[j]));
            for (std::size_t s = 0; s < steps; ++s) amps[start + j] *= phase;
        }
    }
}

namespace {

void butterfly(std::span<Amplitude> amps, std::size_t start, std::size_t half, double scale) {
    for (std::size_t j = start; j < start + half; ++j) {
        const Amplitude x = amps[j];
        const Amplitude y = amps[j + half];
        amps[j] = (x + y) * scale;
        amps[j + half] = (x - y) * scale;
    }
}

}  // namespace

void walsh_hadamard(std::span<Amplitude> amps) {
    const double scale = 1.0 / std::numbers::sqrt2;
    const std::size_t n = amps.size();
    const bool parallel = n >= kParallelThreshold;
    // Stages with half < chunk/2 stay inside one chunk: run them chunk by chunk.
    const std::size_t chunk = std::min(n, kReductionBlock);
    const auto chunks = static_cast<std::int64_t>(n / chunk);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::size_t base = static_cast<std::size_t>(c) * chunk;
        for (std::size_t half = 1; half < chunk; half <<= 1) {
            for (std::size_t start = base; start < base + chunk; start += 2 * half) butterfly(amps, start, half, scale);
        }
    }
    for (std::size_t half = chunk; half < n; half <<= 1) {
        // split each butterfly group into chunk-sized pieces
        const std::size_t pieces = half / chunk;
        const auto tasks = static_cast<std::int64_t>((n / (2 * half)) * pieces);
#pragma omp parallel for schedule(static) if (parallel)
        for (std::int64_t task = 0; task < tasks; ++task) {
            const auto u = static_cast<std::size_t>(task);
            const std::size_t start = (u / pieces) * 2 * half + (u % pieces) * chunk;
            for (std::size_t j = start; j < start + chunk; ++j) {
                const Amplitude x = amps[j];
                const Amplitude y = amps[j + half];
                amps[j] = (x + y) * scale;
                amps[j + half] = (x - y) * scale;
            }
        }
    }
}

void z_expectations(std::span<const Amplitude> amps, std::span<const std::uint64_t> masks, std::span<double> out) {
    const std::size_t terms = masks.size();
    const std::size_t blocks = block_count(amps.size());
    std::vector<double> partial(blocks * terms, 0.0);
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(blocks); ++blk) {
        const std::size_t start = static_cast<std::size_t>(blk) * kReductionBlock;
        const std::size_t len = std::min(amps.size() - start, kReductionBlock);
        double prob[kReductionBlock];
        for (std::size_t j = 0; j < len; ++j) prob[j] = std::norm(amps[start + j]);
        double* acc = partial.data() + static_cast<std::size_t>(blk) * terms;
        for (std::size_t t = 0; t < terms; ++t) {
            double sum = 0.0;
            for (std::size_t j = 0; j < len; ++j) sum += prob[j] * parity_sign(start + j, masks[t]);
            acc[t] = sum;
        }
    }
    for (auto& v : out) v = 0.0;
    for (std::size_t blk = 0; blk < blocks; ++blk) {
        for (std::size_t t = 0; t < terms; ++t) out[t] += partial[blk * terms + t];
    }
}

double norm_squared(std::span<const Amplitude> amps) {
    const std::size_t blocks = block_count(amps.size());
    std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(blocks); ++blk) {
        const std::size_t start = static_cast<std::size_t>(blk) * kReductionBlock;
        const std::size_t stop = std::min(amps.size(), start + kReductionBlock);
        double acc = 0.0;
        for (std::size_t b = start; b < stop; ++b) acc += std::norm(amps[b]);
        partial[static_cast<std::size_t>(blk)] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

}  // namespace hamfex::kernels::omp
