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
#include <span>
#include <string_view>
#include <vector>

namespace hamfex::mi {

enum class Estimator : std::uint8_t { plug_in, ksg };

std::string_view to_string(Estimator e);
Estimator parse_estimator(std::string_view text);

/// Mutual-information-type quantity in nats.
struct MiScore {
    double value = 0.0;
    Estimator estimator = Estimator::plug_in;

    /// KSG can go slightly negative; selection uses the clamped value.
    double clamped() const { return value > 0.0 ? value : 0.0; }
};

using BitSpan = std::span<const std::uint8_t>;

/// Joint counts over small discrete alphabets (2- or 3-way).
class ContingencyTable {
   public:
    /// `symbols[v][r]` is the symbol code (< cardinality[v]) of variable v at row r.
    ContingencyTable(std::vector<std::size_t> cardinality, std::span<const std::vector<std::uint32_t>> symbols);

    std::size_t total() const { return total_; }
    std::size_t ways() const { return cardinality_.size(); }
    std::uint64_t count(std::span<const std::size_t> cell) const;
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    const std::vector<std::size_t>& cardinality() const { return cardinality_; }

    /// Plug-in entropy of the marginal over `vars`.
    double entropy(std::span<const std::size_t> vars) const;

   private:
    std::vector<std::size_t> cardinality_;
    std::vector<std::uint64_t> counts_;
    std::size_t total_ = 0;
};

/// Dense symbol codes for a discrete column (first-seen order). Throws if more
/// than `max_symbols` distinct values occur.
std::vector<std::uint32_t> encode_symbols(std::span<const double> column, std::size_t* cardinality,
                                          std::size_t max_symbols = 64);

/// Plug-in entropy in nats of a discrete column.
double entropy(std::span<const double> x);

/// Plug-in mutual information between two discrete columns (<= 64 symbols each).
MiScore plug_in_mi(std::span<const double> x, std::span<const double> y);
MiScore plug_in_mi(BitSpan x, BitSpan y);

struct KsgOptions {
    std::size_t neighbors = 3;
    std::uint64_t seed = 0;
    /// Distinguishes columns so each gets its own jitter stream.
    std::uint64_t stream = 0;
};

/// Mixed continuous/discrete kNN estimate of I(X; Y). The raw estimate is
/// returned unclamped.
MiScore ksg_mi(std::span<const double> x, BitSpan y, const KsgOptions& options = {});

/// I(Xi; Xj | Y) = sum_y p(y) I(Xi; Xj | Y = y); strata with fewer than two
/// rows contribute 0.
MiScore conditional_mi(BitSpan xi, BitSpan xj, BitSpan y);

/// II(Xi; Xj; Xk) = I(Xi; Xj) - I(Xi; Xj | Xk). Negative means synergy.
MiScore interaction_information(BitSpan xi, BitSpan xj, BitSpan xk);

}  // namespace hamfex::mi
