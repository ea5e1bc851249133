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

// hamfex command-line driver.
//
//   hamfex mi-rank   --input data.csv --label-col y [--split-col s] --top-k 100 --out ranking.csv
//   hamfex select    --ranking ranking.csv --input data.csv --label-col y [--split-col s] --out selection.json
//   hamfex simulate  --selection selection.json --input data.csv --out qfeatures.csv
//   hamfex extract   --config cfg.json --input data.csv --label-col y [--split-col s] --out features.csv
//   hamfex eval      --features features.csv --label-col y [--split-col s] --seeds 5 --report report.json
//   hamfex compare   --report-a a.json --report-b b.json
//
// Exit status: 0 success, 2 invalid input, 3 cache failure, 1 anything else.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "hamfex/dataset.hpp"
#include "hamfex/error.hpp"
#include "hamfex/metrics.hpp"
#include "hamfex/pipeline.hpp"
#include "hamfex/qsim.hpp"
#include "hamfex/selection.hpp"
#include "hamfex/stats.hpp"

using namespace hamfex;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCache = 3;

struct DataFlags {
    std::string input;
    std::string label_col = "label";
    std::string split_col;

    void add_to(CLI::App* cmd, const char* input_help = "labeled descriptor CSV") {
        cmd->add_option("--input", input, input_help)->required();
        cmd->add_option("--label-col", label_col, "label column name")->capture_default_str();
        cmd->add_option("--split-col", split_col, "train/valid/test column; without it every row is a fit row");
    }

    LabeledDataset load() const {
        auto ds = load_labeled_csv(input, label_col, split_col.empty() ? std::nullopt : std::optional(split_col));
        if (!ds.split) ds = with_all_train(std::move(ds));
        return ds;
    }
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open output file " + path);
    return out;
}

void write_json(const std::string& path, const json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

// --- mi-rank ---------------------------------------------------------------

struct MiRankArgs {
    DataFlags data;
    std::size_t top_k = 100;
    std::uint64_t seed = 0;
    std::string out;
};

void run_mi_rank(const MiRankArgs& a) {
    const auto ds = a.data.load();
    const auto ranking = selection::prefilter_top_k(fit_view(ds), a.top_k, a.seed);
    auto out = open_output(a.out);
    out << "feature_name,mi_nats,estimator\n";
    for (std::size_t e = 0; e < ranking.k_selected; ++e) {
        const auto& entry = ranking.entries[e];
        out << ds.features.names()[entry.column] << ',' << format_double(entry.score.value) << ','
            << mi::to_string(entry.score.estimator) << '\n';
    }
}

/// Reads ranking.csv back into a MiRanking over the columns of `features`.
selection::MiRanking read_ranking(const std::string& path, const FeatureMatrix& features) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("feature_name,mi_nats,estimator", 0) != 0) {
        throw ValidationError(path + ": expected header feature_name,mi_nats,estimator");
    }
    selection::MiRanking ranking;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto second = line.rfind(',');
        const auto first = second == std::string::npos ? second : line.rfind(',', second - 1);
        if (first == std::string::npos) throw ValidationError(path + ": row " + std::to_string(row) + " is malformed");
        const auto name = line.substr(0, first);
        double value = 0.0;
        try {
            value = std::stod(line.substr(first + 1, second - first - 1));
        } catch (const std::exception&) {
            throw ValidationError(path + ": row " + std::to_string(row) + " has a non-numeric mi_nats");
        }
        ranking.entries.push_back({features.index_of(name), {value, mi::parse_estimator(line.substr(second + 1))}});
    }
    ranking.k_selected = ranking.entries.size();
    return ranking;
}

// --- select ----------------------------------------------------------------

struct SelectArgs {
    std::string ranking;
    DataFlags data;
    double theta_pair = 0.1;
    double theta_triad = 0.15;
    std::size_t max_pairs = selection::kDefaultMaxPairs;
    std::size_t max_triads = selection::kDefaultMaxTriads;
    std::string out;
};

void run_select(const SelectArgs& a) {
    const auto ds = a.data.load();
    const auto view = fit_view(ds);
    pipeline::Selection sel;
    sel.ranking = read_ranking(a.ranking, ds.features);
    sel.pairs = selection::select_pairs(sel.ranking, view, a.theta_pair, a.max_pairs);
    sel.triads = selection::select_triads(sel.pairs, sel.ranking, view, a.theta_triad, a.max_triads);
    sel.couplings = selection::derive_couplings(sel.pairs, sel.triads);
    sel.qubit_map = selection::QubitMap::from_couplings(sel.couplings);
    write_json(a.out, pipeline::selection_to_json(sel, ds.features));
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string selection;
    std::string input;
    std::vector<std::string> drop;
    double time = 0.5;
    std::size_t steps = 1;
    double alpha = std::numbers::pi / 4.0;
    std::string mixing = "on";
    std::string out;
};

void run_simulate(const SimulateArgs& a) {
    const auto ds = load_feature_csv(a.input, a.drop);
    const auto sel = pipeline::selection_from_json(read_json(a.selection), ds.features);
    qsim::SimulationConfig sim;
    sim.time = a.time;
    sim.steps = a.steps;
    sim.alpha = a.alpha;
    sim.mixing = a.mixing == "on";
    const auto q = pipeline::quantum_features(ds.features, sel, sim);

    auto out = open_output(a.out);
    std::vector<std::string> header;
    if (ds.ids) header.push_back("id");
    header.insert(header.end(), q.names().begin(), q.names().end());
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (std::size_t r = 0; r < q.rows(); ++r) {
        bool first = true;
        if (ds.ids) {
            out << (*ds.ids)[r];
            first = false;
        }
        for (std::size_t c = 0; c < q.cols(); ++c) {
            out << (first ? "" : ",") << format_double(q.at(r, c));
            first = false;
        }
        out << '\n';
    }
}

// --- extract ---------------------------------------------------------------

struct ExtractArgs {
    std::string config;
    DataFlags data;
    std::string out;
    std::string cache_dir;
};

void run_extract(const ExtractArgs& a) {
    const auto cfg = a.config.empty() ? pipeline::PipelineConfig{} : pipeline::PipelineConfig::load(a.config);
    const auto ds = a.data.load();
    const auto result = pipeline::run_extraction(
        cfg, ds, a.cache_dir.empty() ? std::nullopt : std::optional<std::string>(a.cache_dir));
    auto out = open_output(a.out);
    write_labeled_csv(out, result.augmented);
    std::cerr << "extract: " << result.augmented.features.cols() - ds.features.cols() << " columns added"
              << (result.cache_hit ? " (cache hit)" : "") << '\n';
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
    std::string features;
    std::string label_col = "label";
    std::string split_col = "split";
    bool resample = false;
    std::size_t seeds = 5;
    std::string metric = "auroc";
    double l2 = 1e-2;
    std::size_t epochs = 500;
    std::string report;
};

/// 80/20 stratified train/test rows for one seed.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> resample(const std::vector<std::uint8_t>& labels,
                                                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> train, test;
    for (std::uint8_t cls : {0, 1}) {
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < labels.size(); ++r) {
            if (labels[r] == cls) rows.push_back(r);
        }
        std::shuffle(rows.begin(), rows.end(), rng);
        const std::size_t n_test = std::max<std::size_t>(1, rows.size() / 5);
        for (std::size_t i = 0; i < rows.size(); ++i) (i < n_test ? test : train).push_back(rows[i]);
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {train, test};
}

/// True if the CSV header names `column` (header cells may be quoted).
bool header_has(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
        if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
        if (cell == column) return true;
    }
    return false;
}

void run_eval(const EvalArgs& a) {
    if (a.seeds == 0) throw ValidationError("--seeds must be at least 1");
    const auto metric = metrics::parse_metric(a.metric);
    const bool has_split = !a.split_col.empty() && header_has(a.features, a.split_col);
    auto ds = load_labeled_csv(a.features, a.label_col, has_split ? std::optional(a.split_col) : std::nullopt);
    if (a.resample) ds.split.reset();
    std::vector<double> values;
    for (std::size_t s = 0; s < a.seeds; ++s) {
        std::vector<std::size_t> train, test;
        if (ds.split) {
            for (std::size_t r = 0; r < ds.rows(); ++r) ((*ds.split)[r] == Split::test ? test : train).push_back(r);
            if (test.empty()) throw ValidationError("split column has no test rows");
        } else {
            std::tie(train, test) = resample(ds.labels, s);
        }
        const auto tr = ds.select_rows(train);
        const auto te = ds.select_rows(test);
        const metrics::LinearOptions opts{a.l2, a.epochs, s};
        values.push_back(
            metrics::train_eval_linear(tr.features, tr.labels, te.features, te.labels, opts, metric).per_seed[0]);
    }
    const auto report = metrics::MetricReport::from_values(metric, values);
    write_json(a.report, pipeline::report_to_json(report));
    std::cout << metrics::to_string(metric) << " mean " << report.mean << " std " << report.std << '\n';
}

// --- compare ---------------------------------------------------------------

struct CompareArgs {
    std::string report_a;
    std::string report_b;
    std::string out;
};

void run_compare(const CompareArgs& a) {
    const auto ra = pipeline::report_from_json(read_json(a.report_a));
    const auto rb = pipeline::report_from_json(read_json(a.report_b));
    if (ra.metric != rb.metric) throw ValidationError("reports use different metrics");
    const auto result = stats::paired_ttest(ra.per_seed, rb.per_seed);
    const auto j = pipeline::comparison_to_json(result);
    if (!a.out.empty()) write_json(a.out, j);
    std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian feature extraction for tabular molecular descriptors"};
    app.require_subcommand(1);

    MiRankArgs mi_rank;
    auto* cmd = app.add_subcommand("mi-rank", "rank feature columns by mutual information with the label");
    mi_rank.data.add_to(cmd);
    cmd->add_option("--top-k", mi_rank.top_k, "rows to write")->capture_default_str();
    cmd->add_option("--seed", mi_rank.seed, "KSG jitter seed")->capture_default_str();
    cmd->add_option("--out", mi_rank.out, "ranking CSV")->required();
    cmd->callback([&] { run_mi_rank(mi_rank); });

    SelectArgs select;
    cmd = app.add_subcommand("select", "pick interacting pairs and triads among ranked columns");
    cmd->add_option("--ranking", select.ranking, "ranking CSV from mi-rank")->required();
    select.data.add_to(cmd);
    cmd->add_option("--theta-pair", select.theta_pair, "conditional MI threshold (nats)")->capture_default_str();
    cmd->add_option("--theta-triad", select.theta_triad, "|interaction information| threshold (nats)")
        ->capture_default_str();
    cmd->add_option("--max-pairs", select.max_pairs)->capture_default_str();
    cmd->add_option("--max-triads", select.max_triads)->capture_default_str();
    cmd->add_option("--out", select.out, "selection JSON")->required();
    cmd->callback([&] { run_select(select); });

    SimulateArgs simulate;
    cmd = app.add_subcommand("simulate", "compute Z expectation features for every row");
    cmd->add_option("--selection", simulate.selection, "selection JSON")->required();
    cmd->add_option("--input", simulate.input, "CSV holding the selected columns")->required();
    cmd->add_option("--drop", simulate.drop, "non-feature columns to ignore (label, split)");
    cmd->add_option("--time", simulate.time)->capture_default_str();
    cmd->add_option("--steps", simulate.steps)->capture_default_str();
    cmd->add_option("--alpha", simulate.alpha, "encoding angle in (0, pi/2)")->capture_default_str();
    cmd->add_option("--mixing", simulate.mixing)->check(CLI::IsMember({"on", "off"}))->capture_default_str();
    cmd->add_option("--out", simulate.out, "feature CSV")->required();
    cmd->callback([&] { run_simulate(simulate); });

    ExtractArgs extract;
    cmd = app.add_subcommand("extract", "run the full pipeline and append the new feature columns");
    cmd->add_option("--config", extract.config, "pipeline config JSON");
    extract.data.add_to(cmd);
    cmd->add_option("--out", extract.out, "augmented CSV")->required();
    cmd->add_option("--cache-dir", extract.cache_dir, "reuse results keyed by config and data");
    cmd->callback([&] { run_extract(extract); });

    EvalArgs eval;
    cmd = app.add_subcommand("eval", "score features with a logistic model over several seeds");
    cmd->add_option("--features", eval.features, "labeled feature CSV")->required();
    cmd->add_option("--label-col", eval.label_col)->capture_default_str();
    cmd->add_option("--split-col", eval.split_col,
                    "fixed split column, used when present; otherwise a stratified 80/20 resample per seed")
        ->capture_default_str();
    cmd->add_flag("--resample", eval.resample, "ignore the split column and resample per seed");
    cmd->add_option("--seeds", eval.seeds)->capture_default_str();
    cmd->add_option("--metric", eval.metric)->check(CLI::IsMember({"auroc", "auprc"}))->capture_default_str();
    cmd->add_option("--l2", eval.l2)->capture_default_str();
    cmd->add_option("--epochs", eval.epochs)->capture_default_str();
    cmd->add_option("--report", eval.report, "report JSON")->required();
    cmd->callback([&] { run_eval(eval); });

    CompareArgs compare;
    cmd = app.add_subcommand("compare", "paired t-test between two reports");
    cmd->add_option("--report-a", compare.report_a)->required();
    cmd->add_option("--report-b", compare.report_b)->required();
    cmd->add_option("--out", compare.out, "also write the result JSON here");
    cmd->callback([&] { run_compare(compare); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    } catch (const CacheError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCache;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
