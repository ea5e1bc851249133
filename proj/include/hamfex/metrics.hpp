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

#include "hamfex/dataset.hpp"

namespace hamfex::metrics {

enum class Metric : std::uint8_t { auroc, auprc };

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view text);

/// Mann-Whitney AUROC: P(random positive outscores random negative), ties 1/2.
double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Non-interpolated average precision. Tied scores form one threshold: every
/// row in a tie group is admitted together and each positive in the group is
/// credited with the precision at the end of the group.
double auprc(std::span<const double> scores, std::span<const std::uint8_t> labels);

double evaluate(Metric metric, std::span<const double> scores, std::span<const std::uint8_t> labels);

struct MetricReport {
    Metric metric = Metric::auroc;
    std::vector<double> per_seed;
    double mean = 0.0;
    double std = 0.0;  ///< population standard deviation of per_seed

    static MetricReport from_values(Metric metric, std::vector<double> values);
};

struct LinearOptions {
    double l2 = 1e-2;
    std::size_t epochs = 500;
    std::uint64_t seed = 0;
};

/// L2-regularized logistic regression on train-standardized features, fitted
/// by full-batch gradient descent with step 1/L for the smoothness bound L.
class LogisticModel {
   public:
    static LogisticModel fit(const FeatureMatrix& x, std::span<const std::uint8_t> y, const LinearOptions& options);

    /// Positive-class probabilities.
    std::vector<double> predict(const FeatureMatrix& x) const;

    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }

   private:
    std::vector<double> mean_;
    std::vector<double> scale_;
    std::vector<double> weights_;
    double bias_ = 0.0;
};

/// Fit on (train_x, train_y), score test rows, report the metric as a
/// single-entry report.
MetricReport train_eval_linear(const FeatureMatrix& train_x, std::span<const std::uint8_t> train_y,
                               const FeatureMatrix& test_x, std::span<const std::uint8_t> test_y,
                               const LinearOptions& options, Metric metric = Metric::auroc);

}  // namespace hamfex::metrics
