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

// Synthetic datasets shared by the unit and acceptance tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hamfex/dataset.hpp"

namespace fixture {

/// Stratified train/valid/test tags (60/20/20) drawn with `seed`.
inline std::vector<hamfex::Split> stratified_split(const std::vector<std::uint8_t>& labels, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<hamfex::Split> out(labels.size());
    for (std::uint8_t cls : {0, 1}) {
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < labels.size(); ++r) {
            if (labels[r] == cls) rows.push_back(r);
        }
        std::shuffle(rows.begin(), rows.end(), rng);
        const std::size_t n_train = rows.size() * 6 / 10;
        const std::size_t n_valid = rows.size() * 2 / 10;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out[rows[i]] = i < n_train ? hamfex::Split::train
                                       : (i < n_train + n_valid ? hamfex::Split::valid : hamfex::Split::test);
        }
    }
    return out;
}

/// y = f1 XOR f2 with `noise` extra bits. Each (f1, f2) cell holds rows/4
/// rows and every noise bit is exactly half ones inside each cell.
inline hamfex::LabeledDataset xor_dataset(std::size_t rows, std::size_t noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t cell = rows / 4;
    std::vector<std::vector<double>> cols(2 + noise);
    std::vector<std::uint8_t> labels;
    for (int f1 = 0; f1 < 2; ++f1) {
        for (int f2 = 0; f2 < 2; ++f2) {
            std::vector<std::vector<double>> block(noise, std::vector<double>(cell));
            for (auto& b : block) {
                for (std::size_t i = 0; i < cell; ++i) b[i] = i < cell / 2 ? 1.0 : 0.0;
                std::shuffle(b.begin(), b.end(), rng);
            }
            for (std::size_t i = 0; i < cell; ++i) {
                cols[0].push_back(f1);
                cols[1].push_back(f2);
                for (std::size_t n = 0; n < noise; ++n) cols[2 + n].push_back(block[n][i]);
                labels.push_back(static_cast<std::uint8_t>(f1 ^ f2));
            }
        }
    }
    std::vector<std::string> names{"f1", "f2"};
    for (std::size_t n = 0; n < noise; ++n) names.push_back("noise" + std::to_string(n + 1));
    hamfex::LabeledDataset ds;
    ds.features = hamfex::FeatureMatrix::from_columns(std::move(names), std::move(cols));
    ds.labels = std::move(labels);
    ds.split = stratified_split(ds.labels, seed);
    return ds;
}

/// Mixed-kind dataset with a planted XOR signal among binary columns, plus
/// count and continuous columns.
inline hamfex::LabeledDataset mixed_dataset(std::size_t rows, std::size_t binary_cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::poisson_distribution<int> counts(2.0);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<double>> cols(binary_cols + 2, std::vector<double>(rows));
    std::vector<std::uint8_t> labels(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < binary_cols; ++c) cols[c][r] = coin(rng);
        labels[r] = static_cast<std::uint8_t>(static_cast<int>(cols[0][r]) ^ static_cast<int>(cols[1][r]));
        if (binary_cols > 3 && std::bernoulli_distribution(0.3)(rng)) cols[2][r] = labels[r];
        cols[binary_cols][r] = counts(rng) + labels[r];
        cols[binary_cols + 1][r] = g(rng) + 0.5 * labels[r];
    }
    std::vector<std::string> names;
    for (std::size_t c = 0; c < binary_cols; ++c) names.push_back("bit" + std::to_string(c));
    names.push_back("count");
    names.push_back("cont");
    hamfex::LabeledDataset ds;
    ds.features = hamfex::FeatureMatrix::from_columns(std::move(names), std::move(cols));
    ds.labels = std::move(labels);
    ds.split = stratified_split(ds.labels, seed);
    return ds;
}

}  // namespace fixture
