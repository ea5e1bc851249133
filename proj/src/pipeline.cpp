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

#include "hamfex/pipeline.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "hamfex/error.hpp"

namespace hamfex::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::quantum:
            return "quantum";
        case Mode::polynomial:
            return "polynomial";
        case Mode::baseline:
            return "baseline";
    }
    return "unknown";
}

Mode parse_mode(const std::string& text) {
    if (text == "quantum") return Mode::quantum;
    if (text == "polynomial") return Mode::polynomial;
    if (text == "baseline") return Mode::baseline;
    throw ValidationError("mode must be quantum|polynomial|baseline, got '" + text + "'");
}

PipelineConfig PipelineConfig::normalized() const {
    PipelineConfig out = *this;
    if (out.mode == Mode::baseline) {
        out.max_pairs = 0;
        out.max_triads = 0;
    }
    return out;
}

void PipelineConfig::validate() const {
    if (k == 0) throw ValidationError("config: k must be at least 1");
    if (steps == 0) throw ValidationError("config: steps must be at least 1");
    if (!std::isfinite(theta_pair) || !std::isfinite(theta_triad) || !std::isfinite(t)) {
        throw ValidationError("config: thresholds and time must be finite");
    }
    if (!(alpha > 0.0 && alpha < std::numbers::pi / 2.0)) {
        throw ValidationError("config: alpha must lie strictly between 0 and pi/2");
    }
}

json PipelineConfig::to_json() const {
    return json{{"k", k},
                {"theta_pair", theta_pair},
                {"theta_triad", theta_triad},
                {"t", t},
                {"steps", steps},
                {"alpha", alpha},
                {"max_pairs", max_pairs},
                {"max_triads", max_triads},
                {"mixing", mixing},
                {"seed", seed},
                {"mode", to_string(mode)}};
}

PipelineConfig PipelineConfig::from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    PipelineConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            const bool count_field =
                key == "k" || key == "steps" || key == "max_pairs" || key == "max_triads" || key == "seed";
            if (count_field && !value.is_number_unsigned()) {
                throw ValidationError("config: '" + key + "' must be a non-negative integer");
            }
            if (key == "k") {
                c.k = value.get<std::size_t>();
            } else if (key == "theta_pair") {
                c.theta_pair = value.get<double>();
            } else if (key == "theta_triad") {
                c.theta_triad = value.get<double>();
            } else if (key == "t") {
                c.t = value.get<double>();
            } else if (key == "steps") {
                c.steps = value.get<std::size_t>();
            } else if (key == "alpha") {
                c.alpha = value.get<double>();
            } else if (key == "max_pairs") {
                c.max_pairs = value.get<std::size_t>();
            } else if (key == "max_triads") {
                c.max_triads = value.get<std::size_t>();
            } else if (key == "mixing") {
                c.mixing = value.get<bool>();
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else if (key == "mode") {
                c.mode = parse_mode(value.get<std::string>());
            } else {
                throw ValidationError("config: unknown key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

Selection fit_selection(const PipelineConfig& config, const SplitView& view) {
    const auto cfg = config.normalized();
    cfg.validate();
    Selection sel;
    if (cfg.mode == Mode::baseline) return sel;
    sel.ranking = selection::prefilter_top_k(view, cfg.k, cfg.seed);
    if (cfg.mode == Mode::polynomial) return sel;
    sel.pairs = selection::select_pairs(sel.ranking, view, cfg.theta_pair, cfg.max_pairs);
    sel.triads = selection::select_triads(sel.pairs, sel.ranking, view, cfg.theta_triad, cfg.max_triads);
    sel.couplings = selection::derive_couplings(sel.pairs, sel.triads);
    sel.qubit_map = selection::QubitMap::from_couplings(sel.couplings);
    return sel;
}

json selection_to_json(const Selection& sel, const FeatureMatrix& features) {
    const auto& names = features.names();
    json ranking = json::array();
    for (const auto& e : sel.ranking.entries) {
        ranking.push_back({{"column", e.column},
                           {"name", names.at(e.column)},
                           {"mi_nats", e.score.value},
                           {"estimator", std::string(mi::to_string(e.score.estimator))}});
    }
    json pairs = json::array();
    for (const auto& p : sel.pairs) {
        pairs.push_back({{"i", p.i}, {"j", p.j}, {"names", {names.at(p.i), names.at(p.j)}}, {"score", p.score}});
    }
    json triads = json::array();
    for (const auto& t : sel.triads) {
        triads.push_back({{"i", t.i},
                          {"j", t.j},
                          {"k", t.k},
                          {"names", {names.at(t.i), names.at(t.j), names.at(t.k)}},
                          {"score", t.score}});
    }
    json cpairs = json::array();
    for (const auto& p : sel.couplings.pairs) cpairs.push_back({{"i", p.i}, {"j", p.j}, {"strength", p.strength}});
    json ctriads = json::array();
    for (const auto& t : sel.couplings.triads) {
        ctriads.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"strength", t.strength}});
    }
    json qubits = json::array();
    for (std::size_t q = 0; q < sel.qubit_map.size(); ++q) {
        const auto c = sel.qubit_map.column_of(q);
        qubits.push_back({{"column", c}, {"name", names.at(c)}, {"qubit", q}});
    }
    return json{{"ranking", ranking},
                {"k_selected", sel.ranking.k_selected},
                {"pairs", pairs},
                {"triads", triads},
                {"couplings",
                 {{"normalization", sel.couplings.normalization}, {"pairs", cpairs}, {"triads", ctriads}}},
                {"qubit_map", qubits}};
}

Selection selection_from_json(const json& j, const FeatureMatrix& features) {
    Selection sel;
    try {
        // Old column index -> column index in `features`, resolved by name.
        std::map<std::size_t, std::size_t> remap;
        auto note = [&](std::size_t old, const json& name) { remap[old] = features.index_of(name.get<std::string>()); };
        for (const auto& e : j.at("ranking")) note(e.at("column").get<std::size_t>(), e.at("name"));
        for (const auto& p : j.at("pairs")) {
            note(p.at("i").get<std::size_t>(), p.at("names").at(0));
            note(p.at("j").get<std::size_t>(), p.at("names").at(1));
        }
        for (const auto& t : j.at("triads")) {
            note(t.at("i").get<std::size_t>(), t.at("names").at(0));
            note(t.at("j").get<std::size_t>(), t.at("names").at(1));
            note(t.at("k").get<std::size_t>(), t.at("names").at(2));
        }
        for (const auto& q : j.at("qubit_map")) note(q.at("column").get<std::size_t>(), q.at("name"));
        auto col = [&](const json& v) {
            auto it = remap.find(v.get<std::size_t>());
            if (it == remap.end()) throw ValidationError("selection references an unnamed column");
            return it->second;
        };

        for (const auto& e : j.at("ranking")) {
            sel.ranking.entries.push_back(
                {col(e.at("column")),
                 {e.at("mi_nats").get<double>(), mi::parse_estimator(e.at("estimator").get<std::string>())}});
        }
        sel.ranking.k_selected = j.at("k_selected").get<std::size_t>();
        for (const auto& p : j.at("pairs")) sel.pairs.push_back({col(p.at("i")), col(p.at("j")), p.at("score").get<double>()});
        for (const auto& t : j.at("triads")) {
            sel.triads.push_back({col(t.at("i")), col(t.at("j")), col(t.at("k")), t.at("score").get<double>()});
        }
        const auto& c = j.at("couplings");
        sel.couplings.normalization = c.at("normalization").get<double>();
        for (const auto& p : c.at("pairs")) {
            sel.couplings.pairs.push_back({col(p.at("i")), col(p.at("j")), p.at("strength").get<double>()});
        }
        for (const auto& t : c.at("triads")) {
            sel.couplings.triads.push_back({col(t.at("i")), col(t.at("j")), col(t.at("k")), t.at("strength").get<double>()});
        }
        std::vector<std::size_t> qubit_columns(j.at("qubit_map").size());
        std::vector<bool> assigned(qubit_columns.size(), false);
        for (const auto& q : j.at("qubit_map")) {
            const auto qubit = q.at("qubit").get<std::size_t>();
            if (qubit >= qubit_columns.size() || assigned[qubit]) {
                throw ValidationError("selection qubit_map has a bad qubit index");
            }
            qubit_columns[qubit] = col(q.at("column"));
            assigned[qubit] = true;
        }
        sel.qubit_map = selection::QubitMap(std::move(qubit_columns));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed selection JSON: ") + e.what());
    }
    return sel;
}

FeatureMatrix quantum_features(const FeatureMatrix& features, const Selection& sel,
                               const qsim::SimulationConfig& sim) {
    const auto& qmap = sel.qubit_map;
    if (qmap.size() == 0) return {};
    if (qmap.size() > qsim::kMaxQubits) {
        throw ValidationError("selection needs " + std::to_string(qmap.size()) + " qubits, above the " +
                              std::to_string(qsim::kMaxQubits) + "-qubit cap; lower max_pairs/max_triads");
    }
    std::vector<std::vector<std::uint8_t>> bits(features.rows(), std::vector<std::uint8_t>(qmap.size()));
    for (std::size_t q = 0; q < qmap.size(); ++q) {
        const auto col = features.column(qmap.column_of(q));
        for (std::size_t r = 0; r < features.rows(); ++r) bits[r][q] = col[r] > 0.0 ? 1 : 0;
    }
    auto names = qsim::feature_names(sel.couplings, qmap);
    const auto values = qsim::extract_features_batch(bits, sel.couplings, qmap, sim);
    const std::size_t width = names.size();
    std::vector<double> column_major(values.size());
    for (std::size_t r = 0; r < features.rows(); ++r) {
        for (std::size_t f = 0; f < width; ++f) column_major[f * features.rows() + r] = values[r * width + f];
    }
    return FeatureMatrix(std::move(names), std::vector<ColumnKind>(width, ColumnKind::continuous),
                         std::move(column_major), features.rows());
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw CacheError("SHA-256 digest failed");
    }
    std::ostringstream out;
    for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

std::string cache_key(const PipelineConfig& config, const LabeledDataset& dataset) {
    std::ostringstream data;
    write_labeled_csv(data, dataset);
    return sha256_hex(config.normalized().to_json().dump() + "\n" + sha256_hex(data.str()));
}

namespace {

std::optional<ExtractionResult> read_cache(const fs::path& csv, const fs::path& meta, const std::string& key) {
    if (!fs::exists(csv) || !fs::exists(meta)) return std::nullopt;
    try {
        json m;
        {
            std::ifstream in(meta);
            in >> m;
        }
        if (m.at("key").get<std::string>() != key) throw CacheError("key mismatch");
        std::ifstream in(csv, std::ios::binary);
        const auto split_name = m.at("split_name");
        auto ds = parse_labeled_csv(in, m.at("label_name").get<std::string>(),
                                    split_name.is_null() ? std::nullopt
                                                         : std::optional<std::string>(split_name.get<std::string>()));
        std::vector<ColumnKind> kinds;
        for (const auto& k : m.at("kinds")) {
            const auto s = k.get<std::string>();
            kinds.push_back(s == "binary" ? ColumnKind::binary : s == "count" ? ColumnKind::count : ColumnKind::continuous);
        }
        if (kinds.size() != ds.features.cols()) throw CacheError("column count mismatch");
        std::vector<double> values;
        for (std::size_t c = 0; c < ds.features.cols(); ++c) {
            auto col = ds.features.column(c);
            values.insert(values.end(), col.begin(), col.end());
        }
        ds.features = FeatureMatrix(ds.features.names(), std::move(kinds), std::move(values), ds.features.rows());
        ExtractionResult result;
        result.augmented = std::move(ds);
        result.selection = selection_from_json(m.at("selection"), result.augmented.features);
        result.cache_hit = true;
        result.cache_key = key;
        return result;
    } catch (const std::exception& e) {
        std::cerr << "warning: ignoring corrupt cache entry " << csv << " (" << e.what() << "); recomputing\n";
        return std::nullopt;
    }
}

void write_atomically(const fs::path& target, const std::string& contents) {
    static std::atomic<unsigned> counter{0};
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write cache file " + tmp.string());
        out << contents;
        if (!out.flush()) throw CacheError("failed writing cache file " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CacheError("cannot move cache file into place at " + target.string());
    }
}

void write_cache(const fs::path& dir, const fs::path& csv, const fs::path& meta, const std::string& key,
                 const PipelineConfig& config, const ExtractionResult& result) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw CacheError("cannot create cache directory " + dir.string() + ": " + ec.message());
    std::ostringstream data;
    write_labeled_csv(data, result.augmented);
    json kinds = json::array();
    for (auto k : result.augmented.features.kinds()) kinds.push_back(std::string(to_string(k)));
    const json m{{"key", key},
                 {"config", config.normalized().to_json()},
                 {"label_name", result.augmented.label_name},
                 {"split_name", result.augmented.split ? json(result.augmented.split_name) : json(nullptr)},
                 {"kinds", kinds},
                 {"selection", selection_to_json(result.selection, result.augmented.features)}};
    write_atomically(csv, data.str());
    write_atomically(meta, m.dump(2));
}

}  // namespace

ExtractionResult run_extraction(const PipelineConfig& config, const LabeledDataset& dataset,
                                const std::optional<std::string>& cache_dir) {
    const auto cfg = config.normalized();
    cfg.validate();
    dataset.validate();
    const auto view = fit_view(dataset);

    std::string key;
    fs::path csv, meta;
    if (cache_dir) {
        key = cache_key(cfg, dataset);
        csv = fs::path(*cache_dir) / (key + ".csv");
        meta = fs::path(*cache_dir) / (key + ".json");
        if (auto hit = read_cache(csv, meta, key)) return std::move(*hit);
    }

    ExtractionResult result;
    result.cache_key = key;
    result.selection = fit_selection(cfg, view);
    result.augmented = dataset;
    if (cfg.mode == Mode::quantum) {
        const qsim::SimulationConfig sim{cfg.t, cfg.steps, cfg.alpha, cfg.mixing, qsim::Backend::omp};
        result.augmented.features = dataset.features.concat(quantum_features(dataset.features, result.selection, sim));
    } else if (cfg.mode == Mode::polynomial) {
        auto selected = result.selection.ranking.selected();
        std::sort(selected.begin(), selected.end());
        result.augmented.features =
            dataset.features.concat(selection::polynomial_interactions(dataset.features, selected));
    }
    if (cache_dir) write_cache(*cache_dir, csv, meta, key, cfg, result);
    return result;
}

json report_to_json(const metrics::MetricReport& report) {
    return json{{"metric", std::string(metrics::to_string(report.metric))},
                {"per_seed", report.per_seed},
                {"mean", report.mean},
                {"std", report.std}};
}

metrics::MetricReport report_from_json(const json& j) {
    try {
        auto report = metrics::MetricReport::from_values(metrics::parse_metric(j.at("metric").get<std::string>()),
                                                          j.at("per_seed").get<std::vector<double>>());
        return report;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed report JSON: ") + e.what());
    }
}

json comparison_to_json(const stats::ComparisonResult& result) {
    return json{{"t", result.t_statistic},
                {"df", result.degrees_of_freedom()},
                {"p_value", result.p_value},
                {"cohens_d", result.cohens_d},
                {"n_seeds", result.n_seeds}};
}

}  // namespace hamfex::pipeline
