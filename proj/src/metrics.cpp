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

#include "hamfex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hamfex/error.hpp"

namespace hamfex::metrics {

std::string_view to_string(Metric m) { return m == Metric::auprc ? "auprc" : "auroc"; }

Metric parse_metric(std::string_view text) {
    if (text == "auroc") return Metric::auroc;
    if (text == "auprc") return Metric::auprc;
    throw ValidationError("metric must be auroc or auprc, got '" + std::string(text) + "'");
}

namespace {

void check_inputs(std::span<const double> scores, std::span<const std::uint8_t> labels, const char* what) {
    if (scores.size() != labels.size()) throw ValidationError(std::string(what) + ": length mismatch");
    for (auto l : labels) {
        if (l > 1) throw ValidationError(std::string(what) + ": labels must be 0/1");
    }
}

std::vector<std::size_t> order_descending(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

}  // namespace

double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    check_inputs(scores, labels, "auroc");
    const auto positives = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
    const double negatives = static_cast<double>(labels.size()) - positives;
    if (positives == 0.0 || negatives == 0.0) throw ValidationError("auroc: both classes must be present");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    // Rank-sum of positives with midranks for ties.
    double rank_sum = 0.0;
    for (std::size_t start = 0; start < order.size();) {
        std::size_t stop = start;
        while (stop < order.size() && scores[order[stop]] == scores[order[start]]) ++stop;
        const double midrank = 0.5 * static_cast<double>(start + 1 + stop);
        for (std::size_t p = start; p < stop; ++p) {
            if (labels[order[p]] == 1) rank_sum += midrank;
        }
        start = stop;
    }
    const double u = rank_sum - positives * (positives + 1.0) / 2.0;
    return u / (positives * negatives);
}

double auprc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    check_inputs(scores, labels, "auprc");
    const auto positives = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
    if (positives == 0.0) throw ValidationError("auprc: no positive labels");
    const auto order = order_descending(scores);
    double tp = 0.0;
    double seen = 0.0;
    double area = 0.0;
    for (std::size_t start = 0; start < order.size();) {
        std::size_t stop = start;
        double group_pos = 0.0;
        while (stop < order.size() && scores[order[stop]] == scores[order[start]]) {
            group_pos += labels[order[stop]];
            ++stop;
        }
        tp += group_pos;
        seen += static_cast<double>(stop - start);
        area += (group_pos / positives) * (tp / seen);
        start = stop;
    }
    return area;
}

double evaluate(Metric metric, std::span<const double> scores, std::span<const std::uint8_t> labels) {
    return metric == Metric::auprc ? auprc(scores, labels) : auroc(scores, labels);
}

MetricReport MetricReport::from_values(Metric metric, std::vector<double> values) {
    MetricReport report;
    report.metric = metric;
    report.per_seed = std::move(values);
    if (report.per_seed.empty()) return report;
    const auto n = static_cast<double>(report.per_seed.size());
    report.mean = std::accumulate(report.per_seed.begin(), report.per_seed.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : report.per_seed) ss += (v - report.mean) * (v - report.mean);
    report.std = std::sqrt(ss / n);
    return report;
}

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// Largest eigenvalue of Z^T Z / n for standardized column-major Z, by power iteration.
double gram_spectral_bound(const std::vector<std::vector<double>>& z, std::size_t rows) {
    const std::size_t d = z.size();
    if (d == 0 || rows == 0) return 0.0;
    std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
    std::vector<double> zv(rows);
    double lambda = 0.0;
    for (int it = 0; it < 60; ++it) {
        std::fill(zv.begin(), zv.end(), 0.0);
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t r = 0; r < rows; ++r) zv[r] += z[c][r] * v[c];
        }
        std::vector<double> next(d, 0.0);
        for (std::size_t c = 0; c < d; ++c) {
            double acc = 0.0;
            for (std::size_t r = 0; r < rows; ++r) acc += z[c][r] * zv[r];
            next[c] = acc / static_cast<double>(rows);
        }
        double norm = 0.0;
        for (double x : next) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        lambda = norm;
        for (std::size_t c = 0; c < d; ++c) v[c] = next[c] / norm;
    }
    return lambda;
}

}  // namespace

LogisticModel LogisticModel::fit(const FeatureMatrix& x, std::span<const std::uint8_t> y,
                                 const LinearOptions& options) {
    if (x.rows() != y.size()) throw ValidationError("logistic fit: row/label count mismatch");
    const auto positives = std::count(y.begin(), y.end(), 1);
    if (positives == 0 || positives == static_cast<std::ptrdiff_t>(y.size())) {
        throw ValidationError("logistic fit: training labels are single-class");
    }
    if (options.l2 < 0.0) throw ValidationError("logistic fit: l2 must be non-negative");
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const auto nd = static_cast<double>(n);

    LogisticModel model;
    model.mean_.assign(d, 0.0);
    model.scale_.assign(d, 1.0);
    std::vector<std::vector<double>> z(d, std::vector<double>(n));
    for (std::size_t c = 0; c < d; ++c) {
        const auto col = x.column(c);
        const double mean = std::accumulate(col.begin(), col.end(), 0.0) / nd;
        double ss = 0.0;
        for (double v : col) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / nd);
        model.mean_[c] = mean;
        model.scale_[c] = sd > 0.0 ? sd : 1.0;
        for (std::size_t r = 0; r < n; ++r) z[c][r] = (col[r] - mean) / model.scale_[c];
    }

    // Smoothness of the mean log-loss is at most (lambda_max(Z^T Z / n) + 1) / 4
    // (the +1 covers the bias column); pad by 10% for the power-iteration estimate.
    const double smoothness = 1.1 * 0.25 * (gram_spectral_bound(z, n) + 1.0) + options.l2;
    const double step = 1.0 / smoothness;

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> init(0.0, 0.01);
    model.weights_.resize(d);
    for (auto& w : model.weights_) w = init(rng);
    model.bias_ = 0.0;

    std::vector<double> margin(n);
    std::vector<double> grad(d);
    for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
        std::fill(margin.begin(), margin.end(), model.bias_);
        for (std::size_t c = 0; c < d; ++c) {
            const double w = model.weights_[c];
            for (std::size_t r = 0; r < n; ++r) margin[r] += w * z[c][r];
        }
        double grad_bias = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            margin[r] = sigmoid(margin[r]) - static_cast<double>(y[r]);
            grad_bias += margin[r];
        }
        for (std::size_t c = 0; c < d; ++c) {
            double acc = 0.0;
            for (std::size_t r = 0; r < n; ++r) acc += margin[r] * z[c][r];
            grad[c] = acc / nd + options.l2 * model.weights_[c];
        }
        for (std::size_t c = 0; c < d; ++c) model.weights_[c] -= step * grad[c];
        model.bias_ -= step * grad_bias / nd;
    }
    return model;
}

std::vector<double> LogisticModel::predict(const FeatureMatrix& x) const {
    if (x.cols() != weights_.size()) {
        throw ValidationError("logistic predict: expected " + std::to_string(weights_.size()) + " columns, got " +
                              std::to_string(x.cols()));
    }
    std::vector<double> margin(x.rows(), bias_);
    for (std::size_t c = 0; c < x.cols(); ++c) {
        const auto col = x.column(c);
        const double w = weights_[c] / scale_[c];
        for (std::size_t r = 0; r < x.rows(); ++r) margin[r] += w * (col[r] - mean_[c]);
    }
    for (auto& m : margin) m = sigmoid(m);
    return margin;
}

MetricReport train_eval_linear(const FeatureMatrix& train_x, std::span<const std::uint8_t> train_y,
                               const FeatureMatrix& test_x, std::span<const std::uint8_t> test_y,
                               const LinearOptions& options, Metric metric) {
    const auto model = LogisticModel::fit(train_x, train_y, options);
    const auto scores = model.predict(test_x);
    return MetricReport::from_values(metric, {evaluate(metric, scores, test_y)});
}

}  // namespace hamfex::metrics
