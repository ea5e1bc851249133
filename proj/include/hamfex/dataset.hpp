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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hamfex {

enum class ColumnKind : std::uint8_t { count, continuous, binary };

enum class Split : std::uint8_t { train, valid, test };

std::string_view to_string(ColumnKind kind);
std::string_view to_string(Split split);
Split parse_split(std::string_view text);

/// Dense real-valued descriptor matrix, stored column-major so that per-column
/// estimators can take a contiguous span.
class FeatureMatrix {
   public:
    FeatureMatrix() = default;

    /// `values` is column-major: values[c * rows + r]. Throws ValidationError
    /// if shapes disagree, names repeat, any value is non-finite, or a value
    /// contradicts its column kind.
    FeatureMatrix(std::vector<std::string> names, std::vector<ColumnKind> kinds,
                  std::vector<double> values, std::size_t rows);

    /// Same, with kinds inferred from the values (see infer_kind).
    static FeatureMatrix from_columns(std::vector<std::string> names,
                                      std::vector<std::vector<double>> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return names_.size(); }

    double at(std::size_t row, std::size_t col) const { return values_[col * rows_ + row]; }
    std::span<const double> column(std::size_t col) const;

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<ColumnKind>& kinds() const { return kinds_; }
    ColumnKind kind(std::size_t col) const { return kinds_.at(col); }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Like find, but throws ValidationError naming the column.
    std::size_t index_of(std::string_view name) const;

    /// Rows `row_indices`, in the given order.
    FeatureMatrix select_rows(std::span<const std::size_t> row_indices) const;
    /// Horizontal concatenation; column names must stay unique.
    FeatureMatrix concat(const FeatureMatrix& right) const;

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

   private:
    std::vector<std::string> names_;
    std::vector<ColumnKind> kinds_;
    std::vector<double> values_;
    std::size_t rows_ = 0;
};

/// binary if every value is 0 or 1, count if every value is a non-negative
/// integer, continuous otherwise.
ColumnKind infer_kind(std::span<const double> column);

struct LabeledDataset {
    FeatureMatrix features;
    std::vector<std::uint8_t> labels;
    std::optional<std::vector<Split>> split;
    /// Contents of a leading `id` column, if the file had one.
    std::optional<std::vector<std::string>> ids;
    std::string label_name = "label";
    std::string split_name = "split";

    std::size_t rows() const { return features.rows(); }

    /// Throws ValidationError if label/split/id lengths disagree with the
    /// row count or a label is not 0/1.
    void validate() const;

    /// Rows in the given order, carrying labels, splits and ids along.
    LabeledDataset select_rows(std::span<const std::size_t> row_indices) const;

    friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

/// Read a labeled descriptor CSV. Header row is required; a first column named
/// `id` is kept as row identifiers. Every other non-label, non-split column is
/// a feature.
LabeledDataset load_labeled_csv(const std::string& path, const std::string& label_column,
                                const std::optional<std::string>& split_column = std::nullopt);
LabeledDataset parse_labeled_csv(std::istream& in, const std::string& label_column,
                                 const std::optional<std::string>& split_column = std::nullopt);

/// Read a CSV of features only. Columns listed in `drop` are skipped when
/// present; a leading `id` column is kept as ids.
LabeledDataset load_feature_csv(const std::string& path, const std::vector<std::string>& drop = {});

/// Writes id (if any), features, label, split (if any). Numbers use the
/// shortest round-trip representation so a reload is bit-exact.
void write_labeled_csv(std::ostream& out, const LabeledDataset& dataset);
void save_labeled_csv(const std::string& path, const LabeledDataset& dataset);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Copy of `matrix` with each listed column mapped v -> (v > 0 ? 1 : 0).
FeatureMatrix binarize(const FeatureMatrix& matrix, std::span<const std::size_t> columns);

/// Read-only view over the rows of a dataset that selection statistics may
/// see. Only fit_view creates one, so estimators that accept a SplitView can
/// never observe test rows.
class SplitView {
   public:
    const LabeledDataset& dataset() const { return *dataset_; }
    std::span<const std::size_t> row_indices() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    std::size_t cols() const { return dataset_->features.cols(); }

    std::vector<double> column(std::size_t col) const;
    /// Column mapped through the v > 0 presence rule.
    std::vector<std::uint8_t> bit_column(std::size_t col) const;
    std::vector<std::uint8_t> labels() const;

   private:
    SplitView(const LabeledDataset& dataset, std::vector<std::size_t> rows)
        : dataset_(&dataset), rows_(std::move(rows)) {}

    friend SplitView fit_view(const LabeledDataset& dataset);

    const LabeledDataset* dataset_;
    std::vector<std::size_t> rows_;
};

/// View over the train and valid rows. Throws ValidationError if the dataset
/// has no split tags or no train/valid rows.
SplitView fit_view(const LabeledDataset& dataset);

/// Dataset with every row tagged train, for callers that have no held-out set.
LabeledDataset with_all_train(LabeledDataset dataset);

}  // namespace hamfex
