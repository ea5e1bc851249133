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

#pragma once

// Amplitude kernels for diagonal Z-Hamiltonian simulation. Qubit q is bit q
// of the basis index (little-endian). `serial` is the reference
// implementation; `omp` splits the same arithmetic across threads and
// produces bit-identical results for any thread count.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace hamfex::kernels {

using Amplitude = std::complex<double>;

/// coefficient * prod_{q in mask} Z_q, evaluated as +-coefficient by parity.
struct PhaseTerm {
    std::uint64_t mask = 0;
    double coefficient = 0.0;
};

/// Reductions sum fixed-size blocks first, then the block partials in index
/// order, so the result does not depend on how blocks are scheduled.
inline constexpr std::size_t kReductionBlock = std::size_t{1} << 12;

/// Below this many amplitudes the omp kernels run single-threaded.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

inline double parity_sign(std::uint64_t index, std::uint64_t mask) {
    std::uint64_t x = index & mask;
    x ^= x >> 32;
    x ^= x >> 16;
    x ^= x >> 8;
    x ^= x >> 4;
    x ^= x >> 2;
    x ^= x >> 1;
    return 1.0 - 2.0 * static_cast<double>(x & 1U);
}

namespace serial {

/// out[b] = prod_q (bit q of b ? one[q] : zero[q]); out.size() == 2^zero.size().
void product_state(std::span<Amplitude> out, std::span<const double> zero, std::span<const double> one);

/// a_b *= exp(-i dt E(b)) applied `steps` times, E(b) = sum_t c_t * parity sign.
void diagonal_phase(std::span<Amplitude> amps, std::span<const PhaseTerm> terms, double dt, std::size_t steps);

/// Hadamard on every qubit (normalized fast Walsh-Hadamard transform).
void walsh_hadamard(std::span<Amplitude> amps);

/// out[t] = sum_b |a_b|^2 * parity sign of masks[t].
void z_expectations(std::span<const Amplitude> amps, std::span<const std::uint64_t> masks, std::span<double> out);

double norm_squared(std::span<const Amplitude> amps);

}  // namespace serial

namespace omp {

void product_state(std::span<Amplitude> out, std::span<const double> zero, std::span<const double> one);
void diagonal_phase(std::span<Amplitude> amps, std::span<const PhaseTerm> terms, double dt, std::size_t steps);
void walsh_hadamard(std::span<Amplitude> amps);
void z_expectations(std::span<const Amplitude> amps, std::span<const std::uint64_t> masks, std::span<double> out);
double norm_squared(std::span<const Amplitude> amps);

}  // namespace omp

}  // namespace hamfex::kernels
