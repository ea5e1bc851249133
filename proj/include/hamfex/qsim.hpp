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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hamfex/kernels.hpp"
#include "hamfex/selection.hpp"

namespace hamfex::qsim {

/// Largest state simulated; larger requests are rejected, never truncated.
inline constexpr std::size_t kMaxQubits = 28;

enum class Backend : std::uint8_t { serial, omp };

/// 2^n complex amplitudes; qubit q is bit q of the basis index.
class StateVector {
   public:
    explicit StateVector(std::size_t n_qubits);  ///< |0...0>
    StateVector(std::size_t n_qubits, std::vector<kernels::Amplitude> amplitudes);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<kernels::Amplitude> amplitudes() { return amplitudes_; }
    std::span<const kernels::Amplitude> amplitudes() const { return amplitudes_; }
    kernels::Amplitude operator[](std::size_t index) const { return amplitudes_[index]; }

    double norm_squared(Backend backend = Backend::omp) const;

   private:
    std::size_t n_qubits_;
    std::vector<kernels::Amplitude> amplitudes_;
};

struct LinearTerm {
    std::size_t qubit = 0;
    double coefficient = 0.0;
};

struct PairTerm {
    std::size_t qubit_i = 0;
    std::size_t qubit_j = 0;
    double coefficient = 0.0;
};

struct TriadTerm {
    std::size_t qubit_i = 0;
    std::size_t qubit_j = 0;
    std::size_t qubit_k = 0;
    double coefficient = 0.0;
};

/// H = sum x_i Z_i + sum c_ij Z_i Z_j + sum c_ijk Z_i Z_j Z_k, evolved for
/// `time` in `trotter_steps` equal slices.
struct HamiltonianSpec {
    std::size_t n_qubits = 0;
    std::vector<LinearTerm> linear_terms;
    std::vector<PairTerm> pair_terms;
    std::vector<TriadTerm> triad_terms;
    double time = 0.5;
    std::size_t trotter_steps = 1;

    /// Throws ValidationError on bad qubit indices, repeated supports, or
    /// non-finite coefficients.
    void validate() const;
    std::vector<kernels::PhaseTerm> phase_terms() const;
};

/// Linear coefficient of qubit q is bits[q]; couplings are copied through the
/// qubit map in table order.
HamiltonianSpec build_hamiltonian(std::span<const std::uint8_t> bits, const selection::CouplingTable& couplings,
                                  const selection::QubitMap& qubit_map, double time = 0.5, std::size_t steps = 1);

/// Product state with qubit q rotated about Y from |0> by
/// theta_q = pi/2 + alpha (2 x_q - 1); requires 0 < alpha < pi/2.
StateVector prepare_state(std::span<const std::uint8_t> bits, double alpha, Backend backend = Backend::omp);

/// Multiplies each amplitude by exp(-i (t/steps) E(b)), `steps` times.
void evolve_diagonal(StateVector& state, const HamiltonianSpec& hamiltonian, Backend backend = Backend::omp);

/// Hadamard on every qubit.
void apply_mixing(StateVector& state, Backend backend = Backend::omp);

/// A Z-product observable over a set of qubits.
struct ZTerm {
    std::vector<std::size_t> qubits;

    std::uint64_t mask() const;
    /// Z<i>, Z<i>Z<j>, ... using qubit indices.
    std::string name() const;
    friend bool operator==(const ZTerm&, const ZTerm&) = default;
};

struct Expectation {
    ZTerm term;
    double value = 0.0;
};

using ExpectationSet = std::vector<Expectation>;

/// Singles in ascending qubit order, then every pair term, then every triad term.
std::vector<ZTerm> feature_terms(const HamiltonianSpec& hamiltonian);

ExpectationSet measure_expectations(const StateVector& state, std::span<const ZTerm> terms,
                                    Backend backend = Backend::omp);

struct SimulationConfig {
    double time = 0.5;
    std::size_t steps = 1;
    double alpha = std::numbers::pi / 4.0;
    bool mixing = true;
    Backend backend = Backend::omp;
};

/// prepare -> evolve -> (mix) -> measure for one molecule's mapped bits.
ExpectationSet extract_features(std::span<const std::uint8_t> bits, const selection::CouplingTable& couplings,
                                const selection::QubitMap& qubit_map, const SimulationConfig& config);

/// Feature column names for the table, in extraction order, prefixed `q_`.
std::vector<std::string> feature_names(const selection::CouplingTable& couplings,
                                       const selection::QubitMap& qubit_map);

/// Row-major [molecules x features] values for a batch. Parallel across
/// molecules (serial kernels inside); deterministic for any thread count.
std::vector<double> extract_features_batch(const std::vector<std::vector<std::uint8_t>>& bits,
                                           const selection::CouplingTable& couplings,
                                           const selection::QubitMap& qubit_map, SimulationConfig config);

}  // namespace hamfex::qsim
