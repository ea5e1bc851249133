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

#include <cmath>
#include <numbers>
#include <vector>

#include "hamfex/kernels.hpp"

namespace hamfex::kernels::serial {

void product_state(std::span<Amplitude> out, std::span<const double> zero, std::span<const double> one) {
    out[0] = 1.0;
    std::size_t filled = 1;
    for (std::size_t q = 0; q < zero.size(); ++q) {
        for (std::size_t b = 0; b < filled; ++b) {
            out[b | filled] = out[b] * one[q];
            out[b] *= zero[q];
        }
        filled <<= 1;
    }
}

void diagonal_phase(std::span<Amplitude> amps, std::span<const PhaseTerm> terms, double dt, std::size_t steps) {
    for (std::size_t b = 0; b < amps.size(); ++b) {
        double energy = 0.0;
        for (const auto& t : terms) energy += t.coefficient * parity_sign(b, t.mask);
        const Amplitude phase(std::cos(dt * energy), -std::sin(dt * energy));
        for (std::size_t s = 0; s < steps; ++s) amps[b] *= phase;
    }
}

void walsh_hadamard(std::span<Amplitude> amps) {
    const double scale = 1.0 / std::numbers::sqrt2;
    const std::size_t n = amps.size();
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t start = 0; start < n; start += 2 * half) {
            for (std::size_t j = start; j < start + half; ++j) {
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
    std::vector<double> partial(terms);
    for (auto& v : out) v = 0.0;
    for (std::size_t start = 0; start < amps.size(); start += kReductionBlock) {
        const std::size_t stop = std::min(amps.size(), start + kReductionBlock);
        std::fill(partial.begin(), partial.end(), 0.0);
        for (std::size_t b = start; b < stop; ++b) {
            const double p = std::norm(amps[b]);
            for (std::size_t t = 0; t < terms; ++t) partial[t] += p * parity_sign(b, masks[t]);
        }
        for (std::size_t t = 0; t < terms; ++t) out[t] += partial[t];
    }
}

double norm_squared(std::span<const Amplitude> amps) {
    double total = 0.0;
    for (std::size_t start = 0; start < amps.size(); start += kReductionBlock) {
        const std::size_t stop = std::min(amps.size(), start + kReductionBlock);
        double partial = 0.0;
        for (std::size_t b = start; b < stop; ++b) partial += std::norm(amps[b]);
        total += partial;
    }
    return total;
}

}  // namespace hamfex::kernels::serial
