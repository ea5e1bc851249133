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
#include <span>

namespace hamfex::stats {

struct ComparisonResult {
    double t_statistic = 0.0;
    double p_value = 1.0;    ///< two-sided
    double cohens_d = 0.0;   ///< mean(d) / sd(d), sample sd
    std::size_t n_seeds = 0;
    double degrees_of_freedom() const { return static_cast<double>(n_seeds) - 1.0; }
};

/// Two-sided paired t-test on d_i = a_i - b_i. Throws ValidationError for
/// unequal lengths, fewer than two pairs, or zero-variance differences.
ComparisonResult paired_ttest(std::span<const double> a, std::span<const double> b);

}  // namespace hamfex::stats
