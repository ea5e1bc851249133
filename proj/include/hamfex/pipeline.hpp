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

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hamfex/dataset.hpp"
#include "hamfex/metrics.hpp"
#include "hamfex/qsim.hpp"
#include "hamfex/selection.hpp"
#include "hamfex/stats.hpp"

namespace hamfex::pipeline {

enum class Mode : std::uint8_t { quantum, polynomial, baseline };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct PipelineConfig {
    std::size_t k = 100;
    double theta_pair = 0.1;
    double theta_triad = 0.15;
    double t = 0.5;
    std::size_t steps = 1;
    double alpha = std::numbers::pi / 4.0;
    std::size_t max_pairs = selection::kDefaultMaxPairs;
    std::size_t max_triads = selection::kDefaultMaxTriads;
    bool mixing = true;
    std::uint64_t seed = 0;
    Mode mode = Mode::quantum;

    /// baseline forces max_pairs = max_triads = 0.
    PipelineConfig normalized() const;
    void validate() const;

    nlohmann::json to_json() const;
    /// Missing keys keep their defaults; unknown keys are a ValidationError.
    static PipelineConfig from_json(const nlohmann::json& j);
    static PipelineConfig load(const std::string& path);
};

/// Everything fitted on the train+valid rows.
struct Selection {
    selection::MiRanking ranking;
    selection::PairSet pairs;
    selection::TriadSet triads;
    selection::CouplingTable couplings;
    selection::QubitMap qubit_map;

    friend bool operator==(const Selection&, const Selection&) = default;
};

Selection fit_selection(const PipelineConfig& config, const SplitView& view);

/// Includes column names so the file can be applied to another CSV by name.
nlohmann::json selection_to_json(const Selection& sel, const FeatureMatrix& features);
/// Inverse of selection_to_json, resolving column names against `features`.
Selection selection_from_json(const nlohmann::json& j, const FeatureMatrix& features);

/// Quantum feature block for every row of `features` under a fitted selection.
FeatureMatrix quantum_features(const FeatureMatrix& features, const Selection& sel, const qsim::SimulationConfig& sim);

struct ExtractionResult {
    LabeledDataset augmented;  ///< input rows and labels with new columns appended
    Selection selection;
    bool cache_hit = false;
    std::string cache_key;
};

/// Fits selection on the train+valid view, then appends quantum or
/// polynomial columns for every row (test included). With `cache_dir`, the
/// result is read from / written to `<cache_dir>/<key>.csv` plus a `.json`
/// sidecar; a corrupt entry is recomputed with a warning on stderr.
ExtractionResult run_extraction(const PipelineConfig& config, const LabeledDataset& dataset,
                                const std::optional<std::string>& cache_dir = std::nullopt);

/// SHA-256 hex digest of (canonical config JSON, canonical dataset CSV).
std::string cache_key(const PipelineConfig& config, const LabeledDataset& dataset);
std::string sha256_hex(const std::string& bytes);

nlohmann::json report_to_json(const metrics::MetricReport& report);
metrics::MetricReport report_from_json(const nlohmann::json& j);
nlohmann::json comparison_to_json(const stats::ComparisonResult& result);

}  // namespace hamfex::pipeline
