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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances and budgets are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "fixtures.hpp"
#include "hamfex/error.hpp"
#include "hamfex/metrics.hpp"
#include "hamfex/mi.hpp"
#include "hamfex/pipeline.hpp"
#include "hamfex/qsim.hpp"
#include "hamfex/selection.hpp"
#include "hamfex/stats.hpp"
#include "oracles.hpp"

using namespace hamfex;
using Clock = std::chrono::steady_clock;

namespace tol {
constexpr double kMiOracle = 1e-12;
constexpr double kKsg = 0.05;
constexpr double kTrotter = 1e-12;
constexpr double kDenseOracle = 1e-10;
constexpr double kAnalytic = 1e-12;
constexpr double kDiagonalInvariance = 1e-9;
constexpr double kNorm = 1e-12;
constexpr double kBound = 1e-12;
constexpr double kXorQuantumMin = 0.95;
constexpr double kXorBaselineMax = 0.6;
constexpr double kTtestFormula = 1e-6;
constexpr double kKs = 0.05;
constexpr double kScalingPredicted = 16.0;
constexpr double kScalingSlack = 2.0;
}  // namespace tol

namespace budget {
constexpr double kMiOracle = 5.0;
constexpr double kKsg = 30.0;
constexpr double kTrotter = 60.0;
constexpr double kXor = 60.0;
constexpr double kSingleMolecule20 = 5.0;
}  // namespace budget

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

int failures = 0;

void run_test(int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome out;
    const auto start = Clock::now();
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    if (!out.pass) ++failures;
    std::printf("[%s] %2d %s (%s; %.2fs)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(),
                elapsed);
    std::fflush(stdout);
}

std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution b(p);
    std::vector<std::uint8_t> out(n);
    for (auto& v : out) v = b(rng);
    return out;
}

// --- 1 ----------------------------------------------------------------------

Outcome mi_oracle_equivalence() {
    const auto start = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> len(1, 64);
    std::uniform_real_distribution<double> bias(0.05, 0.95);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = len(rng);
        const auto a = random_bits(rng, n, bias(rng));
        const auto b = random_bits(rng, n, bias(rng));
        auto c = random_bits(rng, n, bias(rng));
        if (trial % 2 == 0) {
            for (std::size_t r = 0; r < n; ++r) c[r] ^= a[r] ^ b[r];
        }
        const auto ia = oracle::to_int(a), ib = oracle::to_int(b), ic = oracle::to_int(c);
        worst = std::max(worst, std::fabs(mi::plug_in_mi(a, b).value - oracle::mi(ia, ib)));
        worst = std::max(worst, std::fabs(mi::conditional_mi(a, b, c).value - oracle::cmi(ia, ib, ic)));
        worst = std::max(worst,
                         std::fabs(mi::interaction_information(a, b, c).value - oracle::interaction(ia, ib, ic)));
    }
    const double t = seconds_since(start);
    return {worst <= tol::kMiOracle && t < budget::kMiOracle, "max |err| " + fmt(worst) + ", " + fmt(t) + "s"};
}

// --- 2 ----------------------------------------------------------------------

Outcome ksg_accuracy() {
    const auto start = Clock::now();
    constexpr std::size_t kRows = 2000;
    constexpr int kSeeds = 20;
    struct Case {
        std::string name;
        double sigma;  // < 0: x is the label itself; 0: x independent
        double truth;
    };
    const std::vector<Case> cases{{"x=y", -1.0, std::log(2.0)},
                                  {"independent", 0.0, 0.0},
                                  {"sigma=0.5", 0.5, oracle::mixture_mi(0.5)},
                                  {"sigma=1", 1.0, oracle::mixture_mi(1.0)}};
    bool pass = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        double sum = 0.0;
        for (int seed = 0; seed < kSeeds; ++seed) {
            std::mt19937_64 rng(1000 + seed);
            std::normal_distribution<double> g(0.0, 1.0);
            const auto y = random_bits(rng, kRows, 0.5);
            std::vector<double> x(kRows);
            for (std::size_t r = 0; r < kRows; ++r) {
                x[r] = c.sigma < 0 ? y[r] : (c.sigma == 0 ? g(rng) : y[r] + c.sigma * g(rng));
            }
            sum += mi::ksg_mi(x, y, {.neighbors = 3, .seed = static_cast<std::uint64_t>(seed)}).value;
        }
        const double err = std::fabs(sum / kSeeds - c.truth);
        pass = pass && err <= tol::kKsg;
        detail << c.name << " err " << fmt(err) << "; ";
    }
    const double t = seconds_since(start);
    detail << fmt(t) << "s";
    return {pass && t < budget::kKsg, detail.str()};
}

// --- 3 ----------------------------------------------------------------------

Outcome trotter_exactness() {
    const auto start = Clock::now();
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<std::size_t> size(1, 10);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> time(0.05, 2.0);
    double worst_steps = 0.0, worst_oracle = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = size(rng);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        qsim::HamiltonianSpec h;
        h.n_qubits = n;
        h.time = time(rng);
        for (std::size_t q = 0; q < n; ++q) h.linear_terms.push_back({q, coef(rng)});
        std::set<std::vector<std::size_t>> used;
        for (int a = 0; a < 40; ++a) {
            std::vector<std::size_t> s{pick(rng), pick(rng)};
            std::sort(s.begin(), s.end());
            if (s[0] != s[1] && used.insert(s).second) h.pair_terms.push_back({s[0], s[1], coef(rng)});
            std::vector<std::size_t> t{pick(rng), pick(rng), pick(rng)};
            std::sort(t.begin(), t.end());
            if (t[0] != t[1] && t[1] != t[2] && used.insert(t).second && h.triad_terms.size() < 10) {
                h.triad_terms.push_back({t[0], t[1], t[2], coef(rng)});
            }
        }
        // random normalized start state
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<kernels::Amplitude> amps(std::size_t{1} << n);
        double norm = 0.0;
        for (auto& v : amps) {
            v = {g(rng), g(rng)};
            norm += std::norm(v);
        }
        for (auto& v : amps) v /= std::sqrt(norm);

        qsim::StateVector one(n, amps), seven(n, amps);
        auto h7 = h;
        h7.trotter_steps = 7;
        qsim::evolve_diagonal(one, h);
        qsim::evolve_diagonal(seven, h7);

        std::vector<oracle::Term> terms;
        for (const auto& t : h.linear_terms) terms.push_back({{t.qubit}, t.coefficient});
        for (const auto& t : h.pair_terms) terms.push_back({{t.qubit_i, t.qubit_j}, t.coefficient});
        for (const auto& t : h.triad_terms) terms.push_back({{t.qubit_i, t.qubit_j, t.qubit_k}, t.coefficient});
        const auto energy = oracle::kron_diagonal(n, terms);
        for (std::size_t b = 0; b < amps.size(); ++b) {
            const auto expected = amps[b] * std::exp(kernels::Amplitude(0.0, -h.time * energy[b]));
            worst_steps = std::max(worst_steps, std::abs(one[b] - seven[b]));
            worst_oracle = std::max(worst_oracle, std::max(std::abs(one[b] - expected), std::abs(seven[b] - expected)));
        }
        if (n <= 4) {
            // cross-check the elementwise oracle against the full matrix exponential
            Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
            for (std::size_t b = 0; b < amps.size(); ++b) v(static_cast<Eigen::Index>(b)) = amps[b];
            const Eigen::MatrixXcd u =
                (oracle::dense_hamiltonian(n, terms) * kernels::Amplitude(0.0, -h.time)).exp();
            const Eigen::VectorXcd w = u * v;
            for (std::size_t b = 0; b < amps.size(); ++b) {
                worst_oracle = std::max(worst_oracle, std::abs(one[b] - w(static_cast<Eigen::Index>(b))));
            }
        }
    }
    const double t = seconds_since(start);
    return {worst_steps <= tol::kTrotter && worst_oracle <= tol::kDenseOracle && t < budget::kTrotter,
            "steps 1 vs 7 " + fmt(worst_steps) + ", oracle " + fmt(worst_oracle)};
}

// --- 4 ----------------------------------------------------------------------

Outcome analytic_expectations() {
    const double h = 1.0 / std::sqrt(2.0);
    const Eigen::Matrix2cd z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();

    // one uniform qubit, H = Z0, t = 0.5, then mixing
    qsim::StateVector one(1, {{h, 0.0}, {h, 0.0}});
    qsim::HamiltonianSpec h1;
    h1.n_qubits = 1;
    h1.linear_terms = {{0, 1.0}};
    qsim::evolve_diagonal(one, h1);
    qsim::apply_mixing(one);
    const std::vector<qsim::ZTerm> z0{{{0}}};
    const double single = qsim::measure_expectations(one, z0)[0].value;

    Eigen::Vector2cd v1(h, h);
    const Eigen::Vector2cd w1 = oracle::dense_hadamard_all(1) *
                                (oracle::dense_hamiltonian(1, {{{0}, 1.0}}) * kernels::Amplitude(0, -0.5)).exp() * v1;
    const double single_dense = (w1.adjoint() * z * w1)(0, 0).real();

    // two uniform qubits, H = Z0 Z1
    qsim::StateVector two(2, std::vector<kernels::Amplitude>(4, {0.5, 0.0}));
    qsim::HamiltonianSpec h2;
    h2.n_qubits = 2;
    h2.pair_terms = {{0, 1, 1.0}};
    qsim::evolve_diagonal(two, h2);
    qsim::apply_mixing(two);
    const std::vector<qsim::ZTerm> terms{{{0}}, {{0, 1}}};
    const auto e = qsim::measure_expectations(two, terms);

    const Eigen::Vector4cd v2 = Eigen::Vector4cd::Constant(0.5);
    const Eigen::VectorXcd w2 = oracle::dense_hadamard_all(2) *
                                (oracle::dense_hamiltonian(2, {{{0, 1}, 1.0}}) * kernels::Amplitude(0, -0.5)).exp() * v2;
    const Eigen::MatrixXcd z0_dense = oracle::dense_hamiltonian(2, {{{0}, 1.0}});
    const Eigen::MatrixXcd zz_dense = oracle::dense_hamiltonian(2, {{{0, 1}, 1.0}});
    const double z0_oracle = (w2.adjoint() * z0_dense * w2)(0, 0).real();
    const double zz_oracle = (w2.adjoint() * zz_dense * w2)(0, 0).real();

    const double c1 = std::cos(1.0);
    const double worst = std::max({std::fabs(single - c1), std::fabs(single_dense - c1), std::fabs(e[0].value - c1),
                                   std::fabs(z0_oracle - c1), std::fabs(e[1].value - 1.0),
                                   std::fabs(zz_oracle - 1.0)});
    return {worst <= tol::kAnalytic, "<Z0> " + fmt(single) + ", <Z0Z1> " + fmt(e[1].value) + ", max |err| " +
                                         fmt(worst)};
}

// --- 5 ----------------------------------------------------------------------

Outcome diagonal_invariance() {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> time(0.0, 3.0);
    const double alpha = std::numbers::pi / 2 - 1e-6;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const auto bits = random_bits(rng, n, 0.5);
        selection::CouplingTable table;
        std::vector<std::size_t> cols(n);
        for (std::size_t q = 0; q < n; ++q) cols[q] = q;
        for (std::size_t q = 0; q + 1 < n; ++q) table.pairs.push_back({q, q + 1, coef(rng)});
        if (n >= 3) table.triads.push_back({0, 1, 2, coef(rng)});
        const selection::QubitMap map(cols);

        qsim::SimulationConfig cfg;
        cfg.mixing = false;
        cfg.alpha = alpha;
        cfg.time = 0.0;
        const auto reference = qsim::extract_features(bits, table, map, cfg);
        for (int variant = 0; variant < 4; ++variant) {
            auto t2 = table;
            for (auto& p : t2.pairs) p.strength = coef(rng);
            for (auto& p : t2.triads) p.strength = coef(rng);
            cfg.time = time(rng);
            const auto got = qsim::extract_features(bits, t2, map, cfg);
            for (std::size_t f = 0; f < got.size(); ++f) {
                worst = std::max(worst, std::fabs(got[f].value - reference[f].value));
            }
        }
    }
    return {worst <= tol::kDiagonalInvariance, "max drift " + fmt(worst)};
}

// --- 6 ----------------------------------------------------------------------

Outcome norm_and_bounds() {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<std::size_t> size(1, 20);
    std::uniform_real_distribution<double> strength(0.0, 1.0);
    std::uniform_real_distribution<double> alpha(0.01, std::numbers::pi / 2 - 0.01);
    std::uniform_real_distribution<double> time(0.0, 2.0);
    double worst_norm = 0.0, worst_excess = 0.0;
    std::size_t max_n = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        // mostly small states so the run stays fast, with a few near the top
        std::size_t n = size(rng);
        if (trial % 10 != 0) n = 1 + n % 12;
        max_n = std::max(max_n, n);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        const auto bits = random_bits(rng, n, 0.5);
        std::vector<std::size_t> cols(n);
        for (std::size_t q = 0; q < n; ++q) cols[q] = q;
        selection::CouplingTable table;
        std::set<std::vector<std::size_t>> used;
        for (int a = 0; a < 60 && n >= 2; ++a) {
            std::vector<std::size_t> s{pick(rng), pick(rng)};
            std::sort(s.begin(), s.end());
            if (s[0] != s[1] && table.pairs.size() < 30 && used.insert(s).second) {
                table.pairs.push_back({s[0], s[1], strength(rng)});
            }
            std::vector<std::size_t> t{pick(rng), pick(rng), pick(rng)};
            std::sort(t.begin(), t.end());
            if (n >= 3 && t[0] != t[1] && t[1] != t[2] && table.triads.size() < 10 && used.insert(t).second) {
                table.triads.push_back({t[0], t[1], t[2], strength(rng)});
            }
        }
        const auto h = qsim::build_hamiltonian(bits, table, selection::QubitMap(cols), time(rng), 1 + trial % 3);
        auto state = qsim::prepare_state(bits, alpha(rng));
        // vary composition order
        if (trial % 2 == 0) {
            qsim::evolve_diagonal(state, h);
            qsim::apply_mixing(state);
        } else {
            qsim::apply_mixing(state);
            qsim::evolve_diagonal(state, h);
            qsim::apply_mixing(state);
        }
        worst_norm = std::max(worst_norm, std::fabs(state.norm_squared() - 1.0));
        for (const auto& e : qsim::measure_expectations(state, qsim::feature_terms(h))) {
            worst_excess = std::max(worst_excess, std::fabs(e.value) - 1.0);
        }
    }
    return {worst_norm < tol::kNorm && worst_excess <= tol::kBound,
            "max |norm-1| " + fmt(worst_norm) + ", max excess " + fmt(std::max(0.0, worst_excess)) +
                ", largest n " + std::to_string(max_n)};
}

// --- 7 ----------------------------------------------------------------------

Outcome xor_end_to_end() {
    const auto start = Clock::now();
    constexpr int kSeeds = 5;
    std::vector<double> quantum, baseline;
    bool pair_found = true;
    for (int seed = 0; seed < kSeeds; ++seed) {
        const auto ds = fixture::xor_dataset(400, 6, 700 + seed);
        std::vector<std::size_t> train, test;
        for (std::size_t r = 0; r < ds.rows(); ++r) ((*ds.split)[r] == Split::test ? test : train).push_back(r);

        auto eval = [&](pipeline::Mode mode) {
            pipeline::PipelineConfig cfg;
            cfg.k = 8;
            cfg.theta_pair = 0.1;
            cfg.mode = mode;
            cfg.seed = static_cast<std::uint64_t>(seed);
            const auto result = pipeline::run_extraction(cfg, ds);
            const auto tr = result.augmented.select_rows(train);
            const auto te = result.augmented.select_rows(test);
            const metrics::LinearOptions opts{.seed = static_cast<std::uint64_t>(seed)};
            const double score = metrics::train_eval_linear(tr.features, tr.labels, te.features, te.labels, opts).mean;
            return std::make_pair(score, result.selection);
        };
        const auto [q, sel] = eval(pipeline::Mode::quantum);
        const auto [b, unused] = eval(pipeline::Mode::baseline);
        quantum.push_back(q);
        baseline.push_back(b);
        const auto f1 = ds.features.index_of("f1"), f2 = ds.features.index_of("f2");
        pair_found = pair_found && std::any_of(sel.pairs.begin(), sel.pairs.end(), [&](const auto& p) {
                         return p.i == f1 && p.j == f2;
                     });
    }
    const auto qr = metrics::MetricReport::from_values(metrics::Metric::auroc, quantum);
    const auto br = metrics::MetricReport::from_values(metrics::Metric::auroc, baseline);
    const double t = seconds_since(start);
    const bool pass = pair_found && qr.mean >= tol::kXorQuantumMin && br.mean <= tol::kXorBaselineMax &&
                      t < budget::kXor;
    return {pass, "quantum AUROC " + fmt(qr.mean) + " (min " + fmt(*std::min_element(quantum.begin(), quantum.end())) +
                      "), baseline " + fmt(br.mean) + ", pair (f1,f2) " + (pair_found ? "selected" : "missing")};
}

// --- 8 ----------------------------------------------------------------------

Outcome polynomial_shape() {
    std::mt19937_64 rng(808);
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    for (std::size_t c = 0; c < 150; ++c) {
        names.push_back("d" + std::to_string(c));
        std::vector<double> v(60);
        for (auto& x : v) x = std::bernoulli_distribution(0.5)(rng);
        cols.push_back(v);
    }
    LabeledDataset ds;
    ds.features = FeatureMatrix::from_columns(names, cols);
    for (std::size_t r = 0; r < 60; ++r) ds.labels.push_back(static_cast<std::uint8_t>(ds.features.at(r, 0)));
    ds = with_all_train(ds);
    pipeline::PipelineConfig cfg;
    cfg.k = 100;
    cfg.mode = pipeline::Mode::polynomial;
    const auto result = pipeline::run_extraction(cfg, ds);
    const std::size_t added = result.augmented.features.cols() - ds.features.cols();
    return {added == 4950 && result.selection.ranking.k_selected == 100,
            std::to_string(added) + " interaction columns from " +
                std::to_string(result.selection.ranking.k_selected) + " selected"};
}

// --- 9 ----------------------------------------------------------------------

Outcome leakage_guard() {
    bool identical = true;
    std::size_t runs = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto ds = fixture::mixed_dataset(300, 10, 900 + seed);
        std::vector<std::size_t> keep;
        for (std::size_t r = 0; r < ds.rows(); ++r) {
            if ((*ds.split)[r] != Split::test) keep.push_back(r);
        }
        const auto reduced = ds.select_rows(keep);
        // perturb test rows too: selection must not notice
        auto scrambled = ds;
        for (std::size_t r = 0; r < ds.rows(); ++r) {
            if ((*ds.split)[r] == Split::test) scrambled.labels[r] ^= 1;
        }
        pipeline::PipelineConfig cfg;
        cfg.k = 12;
        cfg.theta_pair = 0.02;
        cfg.theta_triad = 0.02;
        cfg.seed = seed;
        const auto a = pipeline::run_extraction(cfg, ds).selection;
        const auto b = pipeline::run_extraction(cfg, reduced).selection;
        const auto c = pipeline::run_extraction(cfg, scrambled).selection;
        identical = identical && a == b && a == c;
        runs += 3;
    }
    return {identical, std::to_string(runs) + " runs, selections " + (identical ? "bit-identical" : "differ")};
}

// --- 10 ---------------------------------------------------------------------

struct Molecule {
    std::vector<std::uint8_t> bits;
    selection::CouplingTable couplings;
    selection::QubitMap map;
};

Molecule molecule_at(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_real_distribution<double> strength(0.0, 1.0);
    Molecule m;
    m.bits = random_bits(rng, n, 0.5);
    std::vector<std::size_t> cols(n);
    for (std::size_t q = 0; q < n; ++q) cols[q] = q;
    m.map = selection::QubitMap(cols);
    std::set<std::vector<std::size_t>> used;
    while (m.couplings.pairs.size() < 30) {
        std::vector<std::size_t> s{pick(rng), pick(rng)};
        std::sort(s.begin(), s.end());
        if (s[0] != s[1] && used.insert(s).second) m.couplings.pairs.push_back({s[0], s[1], strength(rng)});
    }
    while (m.couplings.triads.size() < 10) {
        std::vector<std::size_t> t{pick(rng), pick(rng), pick(rng)};
        std::sort(t.begin(), t.end());
        if (t[0] != t[1] && t[1] != t[2] && used.insert(t).second) {
            m.couplings.triads.push_back({t[0], t[1], t[2], strength(rng)});
        }
    }
    return m;
}

double best_extraction_seconds(const Molecule& m, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        const auto f = qsim::extract_features(m.bits, m.couplings, m.map, {});
        best = std::min(best, seconds_since(start));
        if (f.size() != m.bits.size() + 40) throw Error("unexpected feature count");
    }
    return best;
}

Outcome performance_envelope() {
    const auto m16 = molecule_at(16, 1016);
    const auto m18 = molecule_at(18, 1018);
    const auto m20 = molecule_at(20, 1020);
    best_extraction_seconds(m16, 1);  // warm-up
    const double t16 = best_extraction_seconds(m16, 7);
    const double t18 = best_extraction_seconds(m18, 5);
    const double t20 = best_extraction_seconds(m20, 3);
    const double ratio = t20 / t16;
    const bool in_band =
        ratio >= tol::kScalingPredicted / tol::kScalingSlack && ratio <= tol::kScalingPredicted * tol::kScalingSlack;
    return {t20 < budget::kSingleMolecule20 && in_band,
            "16/18/20 qubits " + fmt(t16) + "/" + fmt(t18) + "/" + fmt(t20) + "s, ratio 20:16 " + fmt(ratio)};
}

// --- 11 ---------------------------------------------------------------------

Outcome statistics_utilities() {
    const std::vector<double> d{0.01, 0.02, 0.015, 0.012, 0.018};
    const std::vector<double> zero(5, 0.0);
    const auto r = stats::paired_ttest(d, zero);
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= 5.0;
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double t_formula = mean / (std::sqrt(ss / 4.0) / std::sqrt(5.0));
    const bool t_ok = std::fabs(r.t_statistic - t_formula) <= tol::kTtestFormula;
    const bool df_ok = r.degrees_of_freedom() == 4.0;
    const bool d_ok = r.cohens_d == r.t_statistic / std::sqrt(5.0);
    const bool p_ok = r.p_value < 0.01;

    std::mt19937_64 rng(1111);
    std::normal_distribution<double> g(0.8, 0.03);
    std::vector<double> p;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> a(5), b(5);
        for (std::size_t i = 0; i < 5; ++i) {
            a[i] = g(rng);
            b[i] = g(rng);
        }
        p.push_back(stats::paired_ttest(a, b).p_value);
    }
    std::sort(p.begin(), p.end());
    double ks = 0.0;
    const double n = static_cast<double>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        ks = std::max({ks, (static_cast<double>(i) + 1) / n - p[i], p[i] - static_cast<double>(i) / n});
    }
    return {t_ok && df_ok && d_ok && p_ok && ks <= tol::kKs,
            "t " + fmt(r.t_statistic) + " (formula " + fmt(t_formula) + "), df " + fmt(r.degrees_of_freedom()) +
                ", p " + fmt(r.p_value) + ", d " + fmt(r.cohens_d) + ", KS " + fmt(ks)};
}

}  // namespace

int main() {
    run_test(1, "MI oracle equivalence", mi_oracle_equivalence);
    run_test(2, "KSG accuracy", ksg_accuracy);
    run_test(3, "Trotter exactness and dense-oracle equivalence", trotter_exactness);
    run_test(4, "Analytic expectations", analytic_expectations);
    run_test(5, "Diagonal invariance without mixing", diagonal_invariance);
    run_test(6, "Norm and bounds", norm_and_bounds);
    run_test(7, "XOR end-to-end", xor_end_to_end);
    run_test(8, "Polynomial baseline shape", polynomial_shape);
    run_test(9, "Leakage guard", leakage_guard);
    run_test(10, "Performance envelope", performance_envelope);
    run_test(11, "Statistics utilities", statistics_utilities);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
