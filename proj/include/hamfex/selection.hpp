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
#include <optional>
#include <span>
#include <vector>

#include "hamfex/dataset.hpp"
#include "hamfex/mi.hpp"

namespace hamfex::selection {

struct RankedFeature {
    std::size_t column = 0;
    mi::MiScore score;

    friend bool operator==(const RankedFeature& a, const RankedFeature& b) {
        return a.column == b.column && a.score.value == b.score.value && a.score.estimator == b.score.estimator;
    }
};

/// Feature columns ordered by descending MI with the label; ties by column.
struct MiRanking {
    std::vector<RankedFeature> entries;
    std::size_t k_selected = 0;

    /// Column indices of the first k_selected entries, in rank order.
    std::vector<std::size_t> selected() const;

    friend bool operator==(const MiRanking&, const MiRanking&) = default;
};

struct ScoredPair {
    std::size_t i = 0;
    std::size_t j = 0;
    double score = 0.0;  ///< I(Xi; Xj | Y), nats
    friend bool operator==(const ScoredPair&, const ScoredPair&) = default;
};

struct ScoredTriad {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    double score = 0.0;  ///< interaction information, signed, nats
    friend bool operator==(const ScoredTriad&, const ScoredTriad&) = default;
};

using PairSet = std::vector<ScoredPair>;
using TriadSet = std::vector<ScoredTriad>;

struct PairCoupling {
    std::size_t i = 0;
    std::size_t j = 0;
    double strength = 0.0;
    friend bool operator==(const PairCoupling&, const PairCoupling&) = default;
};

struct TriadCoupling {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    double strength = 0.0;
    friend bool operator==(const TriadCoupling&, const TriadCoupling&) = default;
};

/// Max-normalized couplings keyed by dataset column index, in PairSet/TriadSet order.
struct CouplingTable {
    std::vector<PairCoupling> pairs;
    std::vector<TriadCoupling> triads;
    double normalization = 1.0;

    bool empty() const { return pairs.empty() && triads.empty(); }
    friend bool operator==(const CouplingTable&, const CouplingTable&) = default;
};

inline constexpr std::size_t kDefaultMaxPairs = 30;
inline constexpr std::size_t kDefaultMaxTriads = 10;

/// Scores every feature column against the label. Binary columns use plug-in
/// MI, count and continuous columns use KSG (k = 3) seeded per column.
MiRanking prefilter_top_k(const SplitView& view, std::size_t k, std::uint64_t seed = 0);

/// Pairs among the selected columns with I(Xi; Xj | Y) > theta_pair, on
/// binarized columns, sorted by descending score then (i, j), truncated.
PairSet select_pairs(const MiRanking& ranking, const SplitView& view, double theta_pair,
                     std::size_t max_pairs = kDefaultMaxPairs);

/// Extends each pair by every other selected column and keeps triads with
/// |II| > theta_triad, deduplicated by sorted index triple, sorted by |II|.
TriadSet select_triads(const PairSet& pairs, const MiRanking& ranking, const SplitView& view,
                       double theta_triad, std::size_t max_triads = kDefaultMaxTriads);

/// c_ij = pair score, c_ijk = |triad score|, all divided by the largest raw value.
CouplingTable derive_couplings(const PairSet& pairs, const TriadSet& triads);

/// Products x_i * x_j over unordered pairs of `selected`, columns named
/// poly_<i>_<j> after the dataset column indices (i < j).
FeatureMatrix polynomial_interactions(const FeatureMatrix& matrix, std::span<const std::size_t> selected);

/// Maps dataset columns to qubits: qubit q is columns()[q]. from_couplings
/// numbers the distinct columns of the coupling table in ascending order.
class QubitMap {
   public:
    QubitMap() = default;
    explicit QubitMap(std::vector<std::size_t> columns);
    static QubitMap from_couplings(const CouplingTable& couplings);

    std::size_t size() const { return columns_.size(); }
    const std::vector<std::size_t>& columns() const { return columns_; }
    std::size_t column_of(std::size_t qubit) const { return columns_.at(qubit); }
    std::optional<std::size_t> qubit_of(std::size_t column) const;

    friend bool operator==(const QubitMap&, const QubitMap&) = default;

   private:
    std::vector<std::size_t> columns_;
};

}  // namespace hamfex::selection
