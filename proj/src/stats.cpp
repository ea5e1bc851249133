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

#include "hamfex/stats.hpp"

#include <cmath>
#include <vector>

#include "hamfex/error.hpp"
#include "hamfex/special.hpp"

namespace hamfex::stats {

ComparisonResult paired_ttest(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("paired_ttest: samples differ in length");
    if (a.size() < 2) throw ValidationError("paired_ttest: need at least two pairs");
    const std::size_t n = a.size();
    std::vector<double> d(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i] - b[i];
        mean += d[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    // Treat spread at rounding level of the mean as zero variance.
    if (!(sd > 1e-14 * std::max(1.0, std::fabs(mean)))) {
        throw ValidationError("paired_ttest: differences have zero variance; t is undefined");
    }
    ComparisonResult result;
    result.n_seeds = n;
    const double root_n = std::sqrt(static_cast<double>(n));
    result.t_statistic = mean / (sd / root_n);
    result.cohens_d = result.t_statistic / root_n;
    result.p_value = special::student_t_two_sided_p(result.t_statistic, static_cast<double>(n - 1));
    return result;
}

}  // namespace hamfex::stats
