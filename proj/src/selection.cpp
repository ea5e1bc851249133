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

#include "hamfex/selection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

#include "hamfex/error.hpp"

namespace hamfex::selection {

std::vector<std::size_t> MiRanking::selected() const {
    std::vector<std::size_t> out;
    out.reserve(k_selected);
    for (std::size_t r = 0; r < k_selected; ++r) out.push_back(entries[r].column);
    return out;
}

MiRanking prefilter_top_k(const SplitView& view, std::size_t k, std::uint64_t seed) {
    if (view.size() == 0) throw ValidationError("prefilter_top_k: empty view");
    if (k == 0) throw ValidationError("prefilter_top_k: k must be at least 1");
    const auto& features = view.dataset().features;
    const auto labels = view.labels();
    const std::size_t cols = features.cols();

    std::vector<RankedFeature> entries(cols);
    std::vector<std::string> errors(cols);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t c = 0; c < cols; ++c) {
        try {
            if (features.kind(c) == ColumnKind::binary) {
                const auto bits = view.bit_column(c);
                entries[c] = {c, mi::plug_in_mi(bits, labels)};
            } else {
                const auto values = view.column(c);
                entries[c] = {c, mi::ksg_mi(values, labels, {.neighbors = 3, .seed = seed, .stream = c})};
            }
        } catch (const std::exception& e) {
            errors[c] = e.what();
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        if (!errors[c].empty()) throw ValidationError("column '" + features.names()[c] + "': " + errors[c]);
    }
    std::stable_sort(entries.begin(), entries.end(), [](const RankedFeature& a, const RankedFeature& b) {
        return a.score.value > b.score.value;
    });
    return {std::move(entries), std::min(k, cols)};
}

PairSet select_pairs(const MiRanking& ranking, const SplitView& view, double theta_pair, std::size_t max_pairs) {
    if (max_pairs == 0) return {};
    auto selected = ranking.selected();
    std::sort(selected.begin(), selected.end());
    const auto labels = view.labels();
    std::vector<std::vector<std::uint8_t>> bits;
    bits.reserve(selected.size());
    for (std::size_t c : selected) bits.push_back(view.bit_column(c));

    const std::size_t m = selected.size();
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) candidates.emplace_back(a, b);
    }
    std::vector<double> scores(candidates.size());
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < candidates.size(); ++p) {
        const auto [a, b] = candidates[p];
        scores[p] = mi::conditional_mi(bits[a], bits[b], labels).value;
    }

    PairSet pairs;
    for (std::size_t p = 0; p < candidates.size(); ++p) {
        if (scores[p] > theta_pair) {
            pairs.push_back({selected[candidates[p].first], selected[candidates[p].second], scores[p]});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const ScoredPair& x, const ScoredPair& y) {
        if (x.score != y.score) return x.score > y.score;
        return std::tie(x.i, x.j) < std::tie(y.i, y.j);
    });
    if (pairs.size() > max_pairs) pairs.resize(max_pairs);
    return pairs;
}

TriadSet select_triads(const PairSet& pairs, const MiRanking& ranking, const SplitView& view, double theta_triad,
                       std::size_t max_triads) {
    if (pairs.empty() || max_triads == 0) return {};
    const auto selected = ranking.selected();
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> unique;
    for (const auto& p : pairs) {
        for (std::size_t c : selected) {
            if (c == p.i || c == p.j) continue;
            std::array<std::size_t, 3> t{p.i, p.j, c};
            std::sort(t.begin(), t.end());
            unique.emplace(t[0], t[1], t[2]);
        }
    }
    const std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> candidates(unique.begin(), unique.end());

    std::vector<std::size_t> involved;
    for (const auto& [i, j, k] : candidates) involved.insert(involved.end(), {i, j, k});
    std::sort(involved.begin(), involved.end());
    involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
    std::vector<std::vector<std::uint8_t>> bits;
    for (std::size_t c : involved) bits.push_back(view.bit_column(c));
    auto bits_of = [&](std::size_t column) -> const std::vector<std::uint8_t>& {
        auto it = std::lower_bound(involved.begin(), involved.end(), column);
        return bits[static_cast<std::size_t>(it - involved.begin())];
    };

    std::vector<double> scores(candidates.size());
#pragma omp parallel for schedule(static)
    for (std::size_t t = 0; t < candidates.size(); ++t) {
        const auto& [i, j, k] = candidates[t];
        scores[t] = mi::interaction_information(bits_of(i), bits_of(j), bits_of(k)).value;
    }

    TriadSet triads;
    for (std::size_t t = 0; t < candidates.size(); ++t) {
        if (std::fabs(scores[t]) > theta_triad) {
            const auto& [i, j, k] = candidates[t];
            triads.push_back({i, j, k, scores[t]});
        }
    }
    std::sort(triads.begin(), triads.end(), [](const ScoredTriad& x, const ScoredTriad& y) {
        const double ax = std::fabs(x.score);
        const double ay = std::fabs(y.score);
        if (ax != ay) return ax > ay;
        return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
    });
    if (triads.size() > max_triads) triads.resize(max_triads);
    return triads;
}

CouplingTable derive_couplings(const PairSet& pairs, const TriadSet& triads) {
    CouplingTable table;
    double max_abs = 0.0;
    for (const auto& p : pairs) max_abs = std::max(max_abs, std::fabs(p.score));
    for (const auto& t : triads) max_abs = std::max(max_abs, std::fabs(t.score));
    table.normalization = max_abs > 0.0 ? max_abs : 1.0;
    for (const auto& p : pairs) table.pairs.push_back({p.i, p.j, p.score / table.normalization});
    for (const auto& t : triads) table.triads.push_back({t.i, t.j, t.k, std::fabs(t.score) / table.normalization});
    return table;
}

FeatureMatrix polynomial_interactions(const FeatureMatrix& matrix, std::span<const std::size_t> selected) {
    if (selected.size() < 2) throw ValidationError("polynomial_interactions: need at least 2 selected columns");
    for (std::size_t c : selected) {
        if (c >= matrix.cols()) {
            throw ValidationError("polynomial_interactions: column index " + std::to_string(c) + " out of range");
        }
    }
    const std::size_t rows = matrix.rows();
    const std::size_t m = selected.size();
    std::vector<std::string> names;
    std::vector<ColumnKind> kinds;
    std::vector<double> values;
    names.reserve(m * (m - 1) / 2);
    values.reserve(rows * m * (m - 1) / 2);
    for (std::size_t a = 0; a < m; ++a) {
        const auto xa = matrix.column(selected[a]);
        for (std::size_t b = a + 1; b < m; ++b) {
            const auto xb = matrix.column(selected[b]);
            names.push_back("poly_" + std::to_string(std::min(selected[a], selected[b])) + "_" +
                            std::to_string(std::max(selected[a], selected[b])));
            const auto ka = matrix.kind(selected[a]);
            const auto kb = matrix.kind(selected[b]);
            kinds.push_back(ka == ColumnKind::continuous || kb == ColumnKind::continuous ? ColumnKind::continuous
                            : ka == ColumnKind::binary && kb == ColumnKind::binary    ? ColumnKind::binary
                                                                                       : ColumnKind::count);
            for (std::size_t r = 0; r < rows; ++r) values.push_back(xa[r] * xb[r]);
        }
    }
    return FeatureMatrix(std::move(names), std::move(kinds), std::move(values), rows);
}

QubitMap::QubitMap(std::vector<std::size_t> columns) : columns_(std::move(columns)) {
    auto sorted = columns_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("qubit map columns must be distinct");
    }
}

QubitMap QubitMap::from_couplings(const CouplingTable& couplings) {
    std::vector<std::size_t> cols;
    for (const auto& p : couplings.pairs) cols.insert(cols.end(), {p.i, p.j});
    for (const auto& t : couplings.triads) cols.insert(cols.end(), {t.i, t.j, t.k});
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    return QubitMap(std::move(cols));
}

std::optional<std::size_t> QubitMap::qubit_of(std::size_t column) const {
    auto it = std::find(columns_.begin(), columns_.end(), column);
    if (it == columns_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - columns_.begin());
}

}  // namespace hamfex::selection
