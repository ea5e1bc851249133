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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hamfex/error.hpp"
#include "hamfex/pipeline.hpp"

using namespace hamfex;
using namespace hamfex::pipeline;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hamfex_test_" + std::to_string(std::random_device{}()) + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string csv_text(const LabeledDataset& ds) {
    std::ostringstream out;
    write_labeled_csv(out, ds);
    return out.str();
}

PipelineConfig small_config() {
    PipelineConfig cfg;
    cfg.k = 10;
    cfg.theta_pair = 0.05;
    cfg.theta_triad = 0.05;
    return cfg;
}

}  // namespace

TEST_CASE("config JSON round trip and validation") {
    PipelineConfig cfg;
    cfg.k = 12;
    cfg.mode = Mode::polynomial;
    cfg.mixing = false;
    const auto back = PipelineConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());

    CHECK_THROWS_AS(PipelineConfig::from_json(nlohmann::json{{"theta_pairs", 0.1}}), ValidationError);
    CHECK_THROWS_AS(PipelineConfig::from_json(nlohmann::json{{"mode", "classical"}}), ValidationError);
    CHECK_THROWS_AS(PipelineConfig::from_json(nlohmann::json{{"alpha", 2.0}}), ValidationError);
    CHECK_THROWS_AS(PipelineConfig::from_json(nlohmann::json{{"k", -1}}), ValidationError);
    CHECK_THROWS_AS(PipelineConfig::from_json(nlohmann::json{{"k", "ten"}}), ValidationError);
    CHECK_THROWS_AS(PipelineConfig::from_json(nlohmann::json::array()), ValidationError);
    CHECK(PipelineConfig::from_json(nlohmann::json::object()).k == 100);

    PipelineConfig base;
    base.mode = Mode::baseline;
    CHECK(base.normalized().max_pairs == 0);
    CHECK(base.normalized().max_triads == 0);
    CHECK_THROWS_AS(PipelineConfig::load("/nonexistent/config.json"), ValidationError);
}

TEST_CASE("quantum extraction appends named expectation columns") {
    const auto ds = fixture::xor_dataset(200, 4, 1);
    const auto result = run_extraction(small_config(), ds);
    const auto& aug = result.augmented;
    CHECK(aug.rows() == ds.rows());
    CHECK(aug.labels == ds.labels);
    CHECK(aug.split == ds.split);
    CHECK(aug.features.cols() > ds.features.cols());
    for (std::size_t c = 0; c < ds.features.cols(); ++c) CHECK(aug.features.names()[c] == ds.features.names()[c]);
    for (std::size_t c = ds.features.cols(); c < aug.features.cols(); ++c) {
        CHECK(aug.features.names()[c].rfind("q_Z", 0) == 0);
        for (std::size_t r = 0; r < aug.rows(); ++r) {
            CHECK(aug.features.at(r, c) >= -1.0 - 1e-12);
            CHECK(aug.features.at(r, c) <= 1.0 + 1e-12);
        }
    }
    REQUIRE(!result.selection.pairs.empty());
    CHECK(result.selection.pairs.front().i == 0);
    CHECK(result.selection.pairs.front().j == 1);
}

TEST_CASE("cache hit reproduces byte-identical output") {
    TempDir dir;
    const auto ds = fixture::xor_dataset(200, 4, 2);
    const auto first = run_extraction(small_config(), ds, dir.path.string());
    CHECK(!first.cache_hit);
    CHECK(fs::exists(dir.path / (first.cache_key + ".csv")));
    CHECK(fs::exists(dir.path / (first.cache_key + ".json")));
    const auto second = run_extraction(small_config(), ds, dir.path.string());
    CHECK(second.cache_hit);
    CHECK(second.cache_key == first.cache_key);
    CHECK(csv_text(second.augmented) == csv_text(first.augmented));
    CHECK(second.selection == first.selection);

    auto other = small_config();
    other.theta_pair = 0.06;
    CHECK(cache_key(other, ds) != first.cache_key);
    auto changed = ds;
    changed.labels[0] ^= 1;
    CHECK(cache_key(small_config(), changed) != first.cache_key);
}

TEST_CASE("corrupt cache entries are recomputed") {
    TempDir dir;
    const auto ds = fixture::xor_dataset(200, 4, 3);
    const auto first = run_extraction(small_config(), ds, dir.path.string());
    {
        std::ofstream out(dir.path / (first.cache_key + ".csv"), std::ios::trunc);
        out << "garbage,\n1,2,3\n";
    }
    const auto again = run_extraction(small_config(), ds, dir.path.string());
    CHECK(!again.cache_hit);
    CHECK(csv_text(again.augmented) == csv_text(first.augmented));
    const auto third = run_extraction(small_config(), ds, dir.path.string());
    CHECK(third.cache_hit);
}

TEST_CASE("unwritable cache directory is a cache error") {
    TempDir dir;
    const auto blocker = dir.path / "file";
    std::ofstream(blocker) << "x";
    const auto ds = fixture::xor_dataset(200, 4, 3);
    CHECK_THROWS_AS(run_extraction(small_config(), ds, (blocker / "sub").string()), CacheError);
}

TEST_CASE("selection ignores test rows") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto ds = fixture::mixed_dataset(240, 8, seed);
        std::vector<std::size_t> keep;
        for (std::size_t r = 0; r < ds.rows(); ++r) {
            if ((*ds.split)[r] != Split::test) keep.push_back(r);
        }
        const auto without_test = ds.select_rows(keep);
        const auto a = run_extraction(small_config(), ds);
        const auto b = run_extraction(small_config(), without_test);
        CHECK(a.selection == b.selection);
    }
}

TEST_CASE("baseline mode passes the input through") {
    const auto ds = fixture::mixed_dataset(200, 6, 4);
    auto cfg = small_config();
    cfg.mode = Mode::baseline;
    const auto result = run_extraction(cfg, ds);
    CHECK(result.augmented == ds);
    CHECK(result.selection.couplings.empty());
}

TEST_CASE("polynomial mode adds C(k, 2) product columns") {
    std::vector<std::vector<double>> cols(120, std::vector<double>(40));
    std::vector<std::string> names;
    std::mt19937_64 rng(5);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        names.push_back("c" + std::to_string(c));
        for (auto& v : cols[c]) v = coin(rng);
    }
    LabeledDataset ds;
    ds.features = FeatureMatrix::from_columns(names, cols);
    for (std::size_t r = 0; r < 40; ++r) ds.labels.push_back(r % 2);
    ds = with_all_train(ds);
    PipelineConfig cfg;
    cfg.mode = Mode::polynomial;
    const auto result = run_extraction(cfg, ds);
    CHECK(result.augmented.features.cols() == 120 + 4950);
}

TEST_CASE("selection JSON round trip resolves columns by name") {
    const auto ds = fixture::xor_dataset(200, 4, 6);
    const auto sel = fit_selection(small_config(), fit_view(ds));
    const auto j = selection_to_json(sel, ds.features);
    CHECK(selection_from_json(nlohmann::json::parse(j.dump()), ds.features) == sel);

    // Same columns, different order.
    std::vector<std::size_t> order{3, 1, 0, 2, 5, 4};
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    for (auto c : order) {
        names.push_back(ds.features.names()[c]);
        const auto col = ds.features.column(c);
        cols.emplace_back(col.begin(), col.end());
    }
    const auto shuffled = FeatureMatrix::from_columns(names, cols);
    const auto remapped = selection_from_json(j, shuffled);
    const qsim::SimulationConfig sim;
    const auto q1 = quantum_features(ds.features, sel, sim);
    const auto q2 = quantum_features(shuffled, remapped, sim);
    CHECK(q1 == q2);

    auto missing = j;
    missing["qubit_map"][0]["name"] = "nope";
    CHECK_THROWS_AS(selection_from_json(missing, ds.features), ValidationError);
}

TEST_CASE("too many qubits are rejected") {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    for (std::size_t c = 0; c < 30; ++c) {
        names.push_back("b" + std::to_string(c));
        cols.push_back({0, 1});
    }
    const auto features = FeatureMatrix::from_columns(names, cols);
    Selection sel;
    for (std::size_t c = 0; c + 1 < 30; c += 2) sel.couplings.pairs.push_back({c, c + 1, 1.0});
    sel.qubit_map = selection::QubitMap::from_couplings(sel.couplings);
    CHECK_THROWS_AS(quantum_features(features, sel, {}), ValidationError);
}

TEST_CASE("report JSON") {
    const auto r = metrics::MetricReport::from_values(metrics::Metric::auroc, {0.7, 0.8});
    const auto j = report_to_json(r);
    CHECK(j.at("metric") == "auroc");
    const auto back = report_from_json(j);
    CHECK(back.per_seed == r.per_seed);
    CHECK(back.mean == r.mean);
    CHECK_THROWS_AS(report_from_json(nlohmann::json{{"metric", "auroc"}}), ValidationError);
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
