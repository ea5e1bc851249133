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

#include "hamfex/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hamfex/error.hpp"

namespace hamfex::qsim {

namespace {

void check_qubits(std::size_t n) {
    if (n > kMaxQubits) {
        throw ValidationError("state of " + std::to_string(n) + " qubits exceeds the " +
                              std::to_string(kMaxQubits) + "-qubit cap");
    }
}

std::uint64_t bit(std::size_t q) { return std::uint64_t{1} << q; }

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    check_qubits(n_qubits);
    amplitudes_.assign(std::size_t{1} << n_qubits, kernels::Amplitude{});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<kernels::Amplitude> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubits(n_qubits);
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
        throw ValidationError("state of " + std::to_string(n_qubits) + " qubits needs " +
                              std::to_string(std::size_t{1} << n_qubits) + " amplitudes");
    }
}

double StateVector::norm_squared(Backend backend) const {
    return backend == Backend::serial ? kernels::serial::norm_squared(amplitudes_)
                                      : kernels::omp::norm_squared(amplitudes_);
}

void HamiltonianSpec::validate() const {
    check_qubits(n_qubits);
    if (trotter_steps == 0) throw ValidationError("trotter steps must be at least 1");
    if (!std::isfinite(time)) throw ValidationError("evolution time must be finite");
    auto check = [&](std::initializer_list<std::size_t> qubits, double c, auto& seen) {
        std::vector<std::size_t> support(qubits);
        for (std::size_t q : support) {
            if (q >= n_qubits) {
                throw ValidationError("term qubit " + std::to_string(q) + " out of range for " +
                                      std::to_string(n_qubits) + " qubits");
            }
        }
        std::sort(support.begin(), support.end());
        if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
            throw ValidationError("term acts twice on the same qubit");
        }
        if (!seen.insert(support).second) throw ValidationError("duplicate term support");
        if (!std::isfinite(c)) throw ValidationError("term coefficient is not finite");
    };
    std::set<std::vector<std::size_t>> singles, doubles, triples;
    for (const auto& t : linear_terms) check({t.qubit}, t.coefficient, singles);
    for (const auto& t : pair_terms) check({t.qubit_i, t.qubit_j}, t.coefficient, doubles);
    for (const auto& t : triad_terms) check({t.qubit_i, t.qubit_j, t.qubit_k}, t.coefficient, triples);
}

std::vector<kernels::PhaseTerm> HamiltonianSpec::phase_terms() const {
    std::vector<kernels::PhaseTerm> terms;
    for (const auto& t : linear_terms) {
        if (t.coefficient != 0.0) terms.push_back({bit(t.qubit), t.coefficient});
    }
    for (const auto& t : pair_terms) terms.push_back({bit(t.qubit_i) | bit(t.qubit_j), t.coefficient});
    for (const auto& t : triad_terms) {
        terms.push_back({bit(t.qubit_i) | bit(t.qubit_j) | bit(t.qubit_k), t.coefficient});
    }
    return terms;
}

HamiltonianSpec build_hamiltonian(std::span<const std::uint8_t> bits, const selection::CouplingTable& couplings,
                                  const selection::QubitMap& qubit_map, double time, std::size_t steps) {
    if (bits.size() != qubit_map.size()) {
        throw ValidationError("got " + std::to_string(bits.size()) + " bits for " +
                              std::to_string(qubit_map.size()) + " qubits");
    }
    auto qubit = [&](std::size_t column) {
        if (auto q = qubit_map.qubit_of(column)) return *q;
        throw ValidationError("coupling column " + std::to_string(column) + " has no qubit");
    };
    HamiltonianSpec h;
    h.n_qubits = qubit_map.size();
    h.time = time;
    h.trotter_steps = steps;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] > 1) throw ValidationError("bit value for qubit " + std::to_string(q) + " is not 0/1");
        h.linear_terms.push_back({q, static_cast<double>(bits[q])});
    }
    for (const auto& p : couplings.pairs) h.pair_terms.push_back({qubit(p.i), qubit(p.j), p.strength});
    for (const auto& t : couplings.triads) {
        h.triad_terms.push_back({qubit(t.i), qubit(t.j), qubit(t.k), t.strength});
    }
    h.validate();
    return h;
}

StateVector prepare_state(std::span<const std::uint8_t> bits, double alpha, Backend backend) {
    check_qubits(bits.size());
    if (!(alpha > 0.0 && alpha < std::numbers::pi / 2.0)) {
        throw ValidationError("encoding angle alpha must lie strictly between 0 and pi/2");
    }
    std::vector<double> zero(bits.size());
    std::vector<double> one(bits.size());
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] > 1) throw ValidationError("bit value for qubit " + std::to_string(q) + " is not 0/1");
        const double theta = std::numbers::pi / 2.0 + alpha * (2.0 * bits[q] - 1.0);
        zero[q] = std::cos(theta / 2.0);
        one[q] = std::sin(theta / 2.0);
    }
    std::vector<kernels::Amplitude> amps(std::size_t{1} << bits.size());
    if (backend == Backend::serial) {
        kernels::serial::product_state(amps, zero, one);
    } else {
        kernels::omp::product_state(amps, zero, one);
    }
    return StateVector(bits.size(), std::move(amps));
}

void evolve_diagonal(StateVector& state, const HamiltonianSpec& hamiltonian, Backend backend) {
    hamiltonian.validate();
    if (state.n_qubits() != hamiltonian.n_qubits) {
        throw ValidationError("state has " + std::to_string(state.n_qubits()) + " qubits, Hamiltonian has " +
                              std::to_string(hamiltonian.n_qubits));
    }
    const auto terms = hamiltonian.phase_terms();
    if (terms.empty()) return;
    const double dt = hamiltonian.time / static_cast<double>(hamiltonian.trotter_steps);
    if (backend == Backend::serial) {
        kernels::serial::diagonal_phase(state.amplitudes(), terms, dt, hamiltonian.trotter_steps);
    } else {
        kernels::omp::diagonal_phase(state.amplitudes(), terms, dt, hamiltonian.trotter_steps);
    }
}

void apply_mixing(StateVector& state, Backend backend) {
    if (backend == Backend::serial) {
        kernels::serial::walsh_hadamard(state.amplitudes());
    } else {
        kernels::omp::walsh_hadamard(state.amplitudes());
    }
}

std::uint64_t ZTerm::mask() const {
    std::uint64_t m = 0;
    for (std::size_t q : qubits) m |= bit(q);
    return m;
}

std::string ZTerm::name() const {
    std::string out;
    for (std::size_t q : qubits) out += "Z" + std::to_string(q);
    return out;
}

std::vector<ZTerm> feature_terms(const HamiltonianSpec& hamiltonian) {
    std::vector<ZTerm> terms;
    for (std::size_t q = 0; q < hamiltonian.n_qubits; ++q) terms.push_back({{q}});
    for (const auto& t : hamiltonian.pair_terms) terms.push_back({{t.qubit_i, t.qubit_j}});
    for (const auto& t : hamiltonian.triad_terms) terms.push_back({{t.qubit_i, t.qubit_j, t.qubit_k}});
    return terms;
}

ExpectationSet measure_expectations(const StateVector& state, std::span<const ZTerm> terms, Backend backend) {
    std::vector<std::uint64_t> masks;
    masks.reserve(terms.size());
    for (const auto& t : terms) {
        for (std::size_t q : t.qubits) {
            if (q >= state.n_qubits()) {
                throw ValidationError("observable qubit " + std::to_string(q) + " out of range for " +
                                      std::to_string(state.n_qubits()) + " qubits");
            }
        }
        masks.push_back(t.mask());
    }
    std::vector<double> values(terms.size());
    if (backend == Backend::serial) {
        kernels::serial::z_expectations(state.amplitudes(), masks, values);
    } else {
        kernels::omp::z_expectations(state.amplitudes(), masks, values);
    }
    ExpectationSet out;
    out.reserve(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) out.push_back({terms[t], values[t]});
    return out;
}

ExpectationSet extract_features(std::span<const std::uint8_t> bits, const selection::CouplingTable& couplings,
                                const selection::QubitMap& qubit_map, const SimulationConfig& config) {
    const auto h = build_hamiltonian(bits, couplings, qubit_map, config.time, config.steps);
    if (h.n_qubits == 0) return {};
    auto state = prepare_state(bits, config.alpha, config.backend);
    evolve_diagonal(state, h, config.backend);
    if (config.mixing) apply_mixing(state, config.backend);
    const auto terms = feature_terms(h);
    return measure_expectations(state, terms, config.backend);
}

std::vector<std::string> feature_names(const selection::CouplingTable& couplings,
                                       const selection::QubitMap& qubit_map) {
    const std::vector<std::uint8_t> zeros(qubit_map.size(), 0);
    const auto h = build_hamiltonian(zeros, couplings, qubit_map);
    std::vector<std::string> names;
    for (const auto& t : feature_terms(h)) names.push_back("q_" + t.name());
    return names;
}

std::vector<double> extract_features_batch(const std::vector<std::vector<std::uint8_t>>& bits,
                                           const selection::CouplingTable& couplings,
                                           const selection::QubitMap& qubit_map, SimulationConfig config) {
    if (qubit_map.size() == 0) return {};
    const std::size_t width = feature_names(couplings, qubit_map).size();
    std::vector<double> out(bits.size() * width);
    config.backend = Backend::serial;
    std::vector<std::string> errors(bits.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(bits.size()); ++m) {
        const auto row = static_cast<std::size_t>(m);
        try {
            const auto features = extract_features(bits[row], couplings, qubit_map, config);
            for (std::size_t f = 0; f < width; ++f) out[row * width + f] = features[f].value;
        } catch (const std::exception& e) {
            errors[row] = e.what();
        }
    }
    for (std::size_t row = 0; row < errors.size(); ++row) {
        if (!errors[row].empty()) throw ValidationError("molecule row " + std::to_string(row + 1) + ": " + errors[row]);
    }
    return out;
}

}  // namespace hamfex::qsim
