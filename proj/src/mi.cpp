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

#include "hamfex/mi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "hamfex/error.hpp"
#include "hamfex/special.hpp"

namespace hamfex::mi {

std::string_view to_string(Estimator e) { return e == Estimator::ksg ? "ksg" : "plug_in"; }

Estimator parse_estimator(std::string_view text) {
    if (text == "ksg") return Estimator::ksg;
    if (text == "plug_in") return Estimator::plug_in;
    throw ValidationError("unknown estimator '" + std::string(text) + "'");
}

ContingencyTable::ContingencyTable(std::vector<std::size_t> cardinality,
                                   std::span<const std::vector<std::uint32_t>> symbols)
    : cardinality_(std::move(cardinality)) {
    if (cardinality_.size() != symbols.size() || symbols.empty()) {
        throw ValidationError("contingency table: one symbol column per variable is required");
    }
    total_ = symbols.front().size();
    for (const auto& s : symbols) {
        if (s.size() != total_) throw ValidationError("contingency table: column length mismatch");
    }
    std::size_t cells = 1;
    for (std::size_t c : cardinality_) cells *= c;
    counts_.assign(cells, 0);
    for (std::size_t r = 0; r < total_; ++r) {
        std::size_t idx = 0;
        for (std::size_t v = 0; v < symbols.size(); ++v) idx = idx * cardinality_[v] + symbols[v][r];
        ++counts_[idx];
    }
}

std::uint64_t ContingencyTable::count(std::span<const std::size_t> cell) const {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < cardinality_.size(); ++v) idx = idx * cardinality_[v] + cell[v];
    return counts_.at(idx);
}

namespace {

/// Sum of -p ln p over counts; terms are summed in sorted order so the result
/// does not depend on the order the counts are listed.
double entropy_of_counts(std::vector<double> counts, double total) {
    std::vector<double> terms;
    terms.reserve(counts.size());
    for (double n : counts) {
        if (n > 0.0) terms.push_back(-(n / total) * std::log(n / total));
    }
    std::sort(terms.begin(), terms.end());
    return std::accumulate(terms.begin(), terms.end(), 0.0);
}

/// Plug-in MI from a row-major joint count table.
double mi_from_joint(std::span<const double> joint, std::size_t rows, std::size_t cols, double total) {
    std::vector<double> row_sum(rows, 0.0);
    std::vector<double> col_sum(cols, 0.0);
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
            row_sum[a] += joint[a * cols + b];
            col_sum[b] += joint[a * cols + b];
        }
    }
    std::vector<double> terms;
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
            const double n = joint[a * cols + b];
            if (n <= 0.0) continue;
            terms.push_back((n / total) * std::log((n * total) / (row_sum[a] * col_sum[b])));
        }
    }
    std::sort(terms.begin(), terms.end());
    return std::accumulate(terms.begin(), terms.end(), 0.0);
}

void check_bits(BitSpan x, const char* what) {
    for (auto v : x) {
        if (v > 1) throw ValidationError(std::string(what) + ": column is not binary");
    }
}

std::array<double, 8> count_cells(BitSpan a, BitSpan b, BitSpan c) {
    std::array<std::uint64_t, 8> n{};
    for (std::size_t r = 0; r < a.size(); ++r) ++n[(a[r] << 2) | (b[r] << 1) | c[r]];
    std::array<double, 8> out{};
    for (std::size_t i = 0; i < 8; ++i) out[i] = static_cast<double>(n[i]);
    return out;
}

}  // namespace

double ContingencyTable::entropy(std::span<const std::size_t> vars) const {
    std::vector<std::size_t> strides(cardinality_.size(), 1);
    for (std::size_t v = cardinality_.size(); v-- > 1;) strides[v - 1] = strides[v] * cardinality_[v];
    std::size_t marg_cells = 1;
    for (std::size_t v : vars) marg_cells *= cardinality_.at(v);
    std::vector<double> marg(marg_cells, 0.0);
    for (std::size_t idx = 0; idx < counts_.size(); ++idx) {
        std::size_t m = 0;
        for (std::size_t v : vars) m = m * cardinality_[v] + (idx / strides[v]) % cardinality_[v];
        marg[m] += static_cast<double>(counts_[idx]);
    }
    return entropy_of_counts(std::move(marg), static_cast<double>(total_));
}

std::vector<std::uint32_t> encode_symbols(std::span<const double> column, std::size_t* cardinality,
                                          std::size_t max_symbols) {
    std::unordered_map<double, std::uint32_t> codes;
    std::vector<std::uint32_t> out;
    out.reserve(column.size());
    for (double v : column) {
        auto [it, inserted] = codes.emplace(v, static_cast<std::uint32_t>(codes.size()));
        if (inserted && codes.size() > max_symbols) {
            throw ValidationError("discrete column has more than " + std::to_string(max_symbols) +
                                  " distinct symbols");
        }
        out.push_back(it->second);
    }
    *cardinality = codes.size();
    return out;
}

double entropy(std::span<const double> x) {
    if (x.empty()) throw ValidationError("entropy: empty input");
    std::size_t card = 0;
    auto codes = encode_symbols(x, &card);
    std::vector<double> counts(card, 0.0);
    for (auto c : codes) counts[c] += 1.0;
    return entropy_of_counts(std::move(counts), static_cast<double>(x.size()));
}

MiScore plug_in_mi(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("plug_in_mi: length mismatch");
    if (x.empty()) throw ValidationError("plug_in_mi: empty input");
    std::size_t cx = 0;
    std::size_t cy = 0;
    std::vector<std::vector<std::uint32_t>> symbols;
    symbols.push_back(encode_symbols(x, &cx));
    symbols.push_back(encode_symbols(y, &cy));
    const ContingencyTable table({cx, cy}, symbols);
    std::vector<double> joint(table.counts().begin(), table.counts().end());
    return {mi_from_joint(joint, cx, cy, static_cast<double>(table.total())), Estimator::plug_in};
}

MiScore plug_in_mi(BitSpan x, BitSpan y) {
    if (x.size() != y.size()) throw ValidationError("plug_in_mi: length mismatch");
    if (x.empty()) throw ValidationError("plug_in_mi: empty input");
    check_bits(x, "plug_in_mi");
    check_bits(y, "plug_in_mi");
    std::array<double, 4> joint{};
    for (std::size_t r = 0; r < x.size(); ++r) joint[(x[r] << 1) | y[r]] += 1.0;
    return {mi_from_joint(joint, 2, 2, static_cast<double>(x.size())), Estimator::plug_in};
}

MiScore conditional_mi(BitSpan xi, BitSpan xj, BitSpan y) {
    if (xi.size() != xj.size() || xi.size() != y.size()) throw ValidationError("conditional_mi: length mismatch");
    if (xi.empty()) throw ValidationError("conditional_mi: empty input");
    check_bits(xi, "conditional_mi");
    check_bits(xj, "conditional_mi");
    check_bits(y, "conditional_mi");
    // cell index: (y << 2) | (xi << 1) | xj
    const auto n = count_cells(y, xi, xj);
    const double total = static_cast<double>(xi.size());
    double value = 0.0;
    for (std::size_t label = 0; label < 2; ++label) {
        const std::span<const double> stratum(n.data() + 4 * label, 4);
        const double size = stratum[0] + stratum[1] + stratum[2] + stratum[3];
        if (size < 2.0) continue;
        value += (size / total) * mi_from_joint(stratum, 2, 2, size);
    }
    return {value, Estimator::plug_in};
}

MiScore interaction_information(BitSpan xi, BitSpan xj, BitSpan xk) {
    if (xi.size() != xj.size() || xi.size() != xk.size()) {
        throw ValidationError("interaction_information: length mismatch");
    }
    if (xi.empty()) throw ValidationError("interaction_information: empty input");
    check_bits(xi, "interaction_information");
    check_bits(xj, "interaction_information");
    check_bits(xk, "interaction_information");
    const auto n = count_cells(xi, xj, xk);
    const double total = static_cast<double>(xi.size());
    auto marginal = [&](unsigned keep_mask) {
        // keep_mask bits: 4 = xi, 2 = xj, 1 = xk
        std::array<double, 8> m{};
        for (unsigned cell = 0; cell < 8; ++cell) m[cell & keep_mask] += n[cell];
        return entropy_of_counts(std::vector<double>(m.begin(), m.end()), total);
    };
    // II = H(i) + H(j) + H(k) - H(ij) - H(ik) - H(jk) + H(ijk)
    const double singles = marginal(4) + marginal(2) + marginal(1);
    const double doubles = marginal(6) + marginal(5) + marginal(3);
    return {singles - doubles + marginal(7), Estimator::plug_in};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

MiScore ksg_mi(std::span<const double> x, BitSpan y, const KsgOptions& options) {
    const std::size_t k = options.neighbors;
    if (k == 0) throw ValidationError("ksg_mi: neighbor count must be at least 1");
    if (x.size() != y.size()) throw ValidationError("ksg_mi: length mismatch");
    if (x.size() < k + 2) {
        throw ValidationError("ksg_mi: need at least " + std::to_string(k + 2) + " samples, got " +
                              std::to_string(x.size()));
    }
    check_bits(y, "ksg_mi");
    const std::size_t n = x.size();

    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));

    std::vector<double> jittered(x.begin(), x.end());
    if (sd > 0.0) {
        std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(options.stream)));
        std::normal_distribution<double> noise(0.0, 1.0);
        for (double& v : jittered) v += 1e-10 * sd * noise(rng);
    }

    std::array<std::vector<std::size_t>, 2> by_label;
    for (std::size_t r = 0; r < n; ++r) by_label[y[r]].push_back(r);
    if (by_label[0].empty() || by_label[1].empty()) throw ValidationError("ksg_mi: labels are single-class");

    std::vector<double> radius(n, 0.0);
    std::vector<std::size_t> k_used(n, 0);
    std::vector<bool> kept(n, false);
    for (auto& members : by_label) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return jittered[a] < jittered[b] || (jittered[a] == jittered[b] && a < b);
        });
        const std::size_t kk = std::min(k, members.size() - 1);
        for (std::size_t p = 0; p < members.size(); ++p) {
            const double center = jittered[members[p]];
            std::size_t left = p;
            std::size_t right = p + 1;
            double dist = 0.0;
            for (std::size_t step = 0; step < kk; ++step) {
                const double dl = left > 0 ? center - jittered[members[left - 1]] : INFINITY;
                const double dr = right < members.size() ? jittered[members[right]] - center : INFINITY;
                if (dl <= dr) {
                    dist = dl;
                    --left;
                } else {
                    dist = dr;
                    ++right;
                }
            }
            const std::size_t r = members[p];
            radius[r] = std::nextafter(dist, 0.0);
            k_used[r] = kk;
            kept[r] = true;
        }
    }

    std::vector<double> sorted;
    for (std::size_t r = 0; r < n; ++r) {
        if (kept[r]) sorted.push_back(jittered[r]);
    }
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m_total = sorted.size();

    double sum_k = 0.0;
    double sum_label = 0.0;
    double sum_m = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        if (!kept[r]) continue;
        const double center = jittered[r];
        const double rad = radius[r];
        auto lo = std::partition_point(sorted.begin(), sorted.end(), [&](double v) { return center - v > rad; });
        auto hi = std::partition_point(lo, sorted.end(), [&](double v) { return v - center <= rad; });
        const auto m = static_cast<double>(hi - lo);
        sum_k += special::digamma(static_cast<double>(k_used[r]));
        sum_label += special::digamma(static_cast<double>(by_label[y[r]].size()));
        sum_m += special::digamma(m);
    }
    const double count = static_cast<double>(m_total);
    const double value =
        special::digamma(count) + sum_k / count - sum_label / count - sum_m / count;
    return {value, Estimator::ksg};
}

}  // namespace hamfex::mi
