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

#include "hamfex/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "hamfex/error.hpp"

namespace hamfex {

std::string_view to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::count:
            return "count";
        case ColumnKind::continuous:
            return "continuous";
        case ColumnKind::binary:
            return "binary";
    }
    return "unknown";
}

std::string_view to_string(Split split) {
    switch (split) {
        case Split::train:
            return "train";
        case Split::valid:
            return "valid";
        case Split::test:
            return "test";
    }
    return "unknown";
}

Split parse_split(std::string_view text) {
    if (text == "train") return Split::train;
    if (text == "valid") return Split::valid;
    if (text == "test") return Split::test;
    throw ValidationError("split value must be train|valid|test, got '" + std::string(text) + "'");
}

ColumnKind infer_kind(std::span<const double> column) {
    bool binary = true;
    bool count = true;
    for (double v : column) {
        if (v != 0.0 && v != 1.0) binary = false;
        if (v < 0.0 || v != std::floor(v)) count = false;
        if (!binary && !count) break;
    }
    if (binary) return ColumnKind::binary;
    if (count) return ColumnKind::count;
    return ColumnKind::continuous;
}

namespace {

void check_kind(const std::string& name, ColumnKind kind, std::span<const double> column) {
    for (std::size_t r = 0; r < column.size(); ++r) {
        const double v = column[r];
        if (!std::isfinite(v)) {
            throw ValidationError("non-finite value in column '" + name + "' at row " +
                                  std::to_string(r + 1));
        }
        const bool ok = kind == ColumnKind::binary  ? (v == 0.0 || v == 1.0)
                        : kind == ColumnKind::count ? (v >= 0.0 && v == std::floor(v))
                                                    : true;
        if (!ok) {
            throw ValidationError("value " + format_double(v) + " in column '" + name + "' at row " +
                                  std::to_string(r + 1) + " is not a valid " +
                                  std::string(to_string(kind)) + " value");
        }
    }
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::vector<std::string> names, std::vector<ColumnKind> kinds,
                             std::vector<double> values, std::size_t rows)
    : names_(std::move(names)), kinds_(std::move(kinds)), values_(std::move(values)), rows_(rows) {
    if (kinds_.size() != names_.size()) {
        throw ValidationError("column kind count does not match column name count");
    }
    if (values_.size() != rows_ * names_.size()) {
        throw ValidationError("matrix has " + std::to_string(values_.size()) + " values, expected " +
                              std::to_string(rows_) + " x " + std::to_string(names_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (!seen.insert(n).second) throw ValidationError("duplicate column name '" + n + "'");
    }
    for (std::size_t c = 0; c < names_.size(); ++c) check_kind(names_[c], kinds_[c], column(c));
}

FeatureMatrix FeatureMatrix::from_columns(std::vector<std::string> names,
                                          std::vector<std::vector<double>> columns) {
    if (names.size() != columns.size()) {
        throw ValidationError("column name count does not match column count");
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    std::vector<double> values;
    values.reserve(rows * columns.size());
    std::vector<ColumnKind> kinds;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw ValidationError("column '" + names[c] + "' has " + std::to_string(columns[c].size()) +
                                  " rows, expected " + std::to_string(rows));
        }
        kinds.push_back(infer_kind(columns[c]));
        values.insert(values.end(), columns[c].begin(), columns[c].end());
    }
    return FeatureMatrix(std::move(names), std::move(kinds), std::move(values), rows);
}

std::span<const double> FeatureMatrix::column(std::size_t col) const {
    if (col >= cols()) throw ValidationError("column index " + std::to_string(col) + " out of range");
    return {values_.data() + col * rows_, rows_};
}

std::optional<std::size_t> FeatureMatrix::find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t FeatureMatrix::index_of(std::string_view name) const {
    if (auto idx = find(name)) return *idx;
    throw ValidationError("missing column '" + std::string(name) + "'");
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> row_indices) const {
    std::vector<double> values;
    values.reserve(row_indices.size() * cols());
    for (std::size_t c = 0; c < cols(); ++c) {
        for (std::size_t r : row_indices) {
            if (r >= rows_) throw ValidationError("row index " + std::to_string(r) + " out of range");
            values.push_back(at(r, c));
        }
    }
    FeatureMatrix out;
    out.names_ = names_;
    out.kinds_ = kinds_;
    out.values_ = std::move(values);
    out.rows_ = row_indices.size();
    return out;
}

FeatureMatrix FeatureMatrix::concat(const FeatureMatrix& right) const {
    if (right.cols() == 0) return *this;
    if (cols() == 0) return right;
    if (right.rows() != rows()) {
        throw ValidationError("cannot concatenate matrices with " + std::to_string(rows()) + " and " +
                              std::to_string(right.rows()) + " rows");
    }
    auto names = names_;
    names.insert(names.end(), right.names_.begin(), right.names_.end());
    auto kinds = kinds_;
    kinds.insert(kinds.end(), right.kinds_.begin(), right.kinds_.end());
    auto values = values_;
    values.insert(values.end(), right.values_.begin(), right.values_.end());
    return FeatureMatrix(std::move(names), std::move(kinds), std::move(values), rows_);
}

void LabeledDataset::validate() const {
    if (labels.size() != rows()) {
        throw ValidationError("label count " + std::to_string(labels.size()) + " does not match row count " +
                              std::to_string(rows()));
    }
    for (std::size_t r = 0; r < labels.size(); ++r) {
        if (labels[r] > 1) throw ValidationError("label at row " + std::to_string(r + 1) + " is not 0/1");
    }
    if (split && split->size() != rows()) throw ValidationError("split count does not match row count");
    if (ids && ids->size() != rows()) throw ValidationError("id count does not match row count");
}

LabeledDataset LabeledDataset::select_rows(std::span<const std::size_t> row_indices) const {
    LabeledDataset out;
    out.features = features.select_rows(row_indices);
    out.label_name = label_name;
    out.split_name = split_name;
    out.labels.reserve(row_indices.size());
    for (std::size_t r : row_indices) out.labels.push_back(labels.at(r));
    if (split) {
        out.split.emplace();
        for (std::size_t r : row_indices) out.split->push_back(split->at(r));
    }
    if (ids) {
        out.ids.emplace();
        for (std::size_t r : row_indices) out.ids->push_back(ids->at(r));
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    if (first < last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ValidationError("cannot parse '" + cell + "' as a number at row " + std::to_string(row) +
                              ", column '" + column + "'");
    }
    if (!std::isfinite(value)) {
        throw ValidationError("non-finite value at row " + std::to_string(row) + ", column '" + column + "'");
    }
    return value;
}

struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

RawTable read_table(std::istream& in) {
    RawTable table;
    std::string line;
    if (!next_line(in, line)) throw ValidationError("CSV is empty; a header row is required");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    table.header = split_csv_line(line);
    std::set<std::string> seen;
    for (const auto& h : table.header) {
        if (!seen.insert(h).second) throw ValidationError("duplicate header column '" + h + "'");
    }
    while (next_line(in, line)) {
        auto fields = split_csv_line(line);
        if (fields.size() != table.header.size()) {
            throw ValidationError("row " + std::to_string(table.rows.size() + 1) + " has " +
                                  std::to_string(fields.size()) + " cells, header has " +
                                  std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

std::optional<std::size_t> header_index(const RawTable& table, const std::string& name) {
    auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - table.header.begin());
}

LabeledDataset build_dataset(const RawTable& table, std::optional<std::size_t> label_idx,
                             std::optional<std::size_t> split_idx, const std::vector<std::size_t>& skipped) {
    LabeledDataset ds;
    const std::size_t n = table.rows.size();
    const bool has_id = !table.header.empty() && table.header.front() == "id";
    if (has_id) {
        ds.ids.emplace();
        for (const auto& row : table.rows) ds.ids->push_back(row.front());
    }
    if (label_idx) {
        ds.label_name = table.header[*label_idx];
        ds.labels.reserve(n);
        for (std::size_t r = 0; r < n; ++r) {
            const double v = parse_cell(table.rows[r][*label_idx], r + 1, ds.label_name);
            if (v != 0.0 && v != 1.0) {
                throw ValidationError("label column '" + ds.label_name + "' has value " + table.rows[r][*label_idx] +
                                      " at row " + std::to_string(r + 1) + "; labels must be 0 or 1");
            }
            ds.labels.push_back(static_cast<std::uint8_t>(v));
        }
    } else {
        ds.labels.assign(n, 0);
    }
    if (split_idx) {
        ds.split_name = table.header[*split_idx];
        ds.split.emplace();
        ds.split->reserve(n);
        for (std::size_t r = 0; r < n; ++r) {
            try {
                ds.split->push_back(parse_split(table.rows[r][*split_idx]));
            } catch (const ValidationError& e) {
                throw ValidationError(std::string(e.what()) + " at row " + std::to_string(r + 1));
            }
        }
    }

    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if ((has_id && c == 0) || c == label_idx || c == split_idx) continue;
        if (std::find(skipped.begin(), skipped.end(), c) != skipped.end()) continue;
        std::vector<double> col;
        col.reserve(n);
        for (std::size_t r = 0; r < n; ++r) col.push_back(parse_cell(table.rows[r][c], r + 1, table.header[c]));
        names.push_back(table.header[c]);
        columns.push_back(std::move(col));
    }
    if (names.empty()) throw ValidationError("CSV has no feature columns");
    ds.features = FeatureMatrix::from_columns(std::move(names), std::move(columns));
    ds.validate();
    return ds;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return in;
}

}  // namespace

LabeledDataset parse_labeled_csv(std::istream& in, const std::string& label_column,
                                 const std::optional<std::string>& split_column) {
    const RawTable table = read_table(in);
    auto label_idx = header_index(table, label_column);
    if (!label_idx) throw ValidationError("missing label column '" + label_column + "'");
    std::optional<std::size_t> split_idx;
    if (split_column) {
        split_idx = header_index(table, *split_column);
        if (!split_idx) throw ValidationError("missing split column '" + *split_column + "'");
    }
    return build_dataset(table, label_idx, split_idx, {});
}

LabeledDataset load_labeled_csv(const std::string& path, const std::string& label_column,
                                const std::optional<std::string>& split_column) {
    auto in = open_input(path);
    return parse_labeled_csv(in, label_column, split_column);
}

LabeledDataset load_feature_csv(const std::string& path, const std::vector<std::string>& drop) {
    auto in = open_input(path);
    const RawTable table = read_table(in);
    std::vector<std::size_t> skipped;
    for (const auto& name : drop) {
        if (auto idx = header_index(table, name)) skipped.push_back(*idx);
    }
    return build_dataset(table, std::nullopt, std::nullopt, skipped);
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_labeled_csv(std::ostream& out, const LabeledDataset& dataset) {
    dataset.validate();
    const auto& fm = dataset.features;
    bool first = true;
    auto sep = [&] {
        if (!first) out << ',';
        first = false;
    };
    if (dataset.ids) {
        sep();
        out << "id";
    }
    for (const auto& n : fm.names()) {
        sep();
        out << quote_if_needed(n);
    }
    sep();
    out << quote_if_needed(dataset.label_name);
    if (dataset.split) {
        sep();
        out << quote_if_needed(dataset.split_name);
    }
    out << '\n';
    for (std::size_t r = 0; r < dataset.rows(); ++r) {
        first = true;
        if (dataset.ids) {
            sep();
            out << quote_if_needed((*dataset.ids)[r]);
        }
        for (std::size_t c = 0; c < fm.cols(); ++c) {
            sep();
            out << format_double(fm.at(r, c));
        }
        sep();
        out << static_cast<int>(dataset.labels[r]);
        if (dataset.split) {
            sep();
            out << to_string((*dataset.split)[r]);
        }
        out << '\n';
    }
}

void save_labeled_csv(const std::string& path, const LabeledDataset& dataset) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    write_labeled_csv(out, dataset);
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

FeatureMatrix binarize(const FeatureMatrix& matrix, std::span<const std::size_t> columns) {
    std::vector<std::vector<double>> cols;
    cols.reserve(matrix.cols());
    auto kinds = matrix.kinds();
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        auto col = matrix.column(c);
        cols.emplace_back(col.begin(), col.end());
    }
    for (std::size_t c : columns) {
        if (c >= matrix.cols()) {
            throw ValidationError("binarize: column index " + std::to_string(c) + " out of range (" +
                                  std::to_string(matrix.cols()) + " columns)");
        }
        for (double& v : cols[c]) v = v > 0.0 ? 1.0 : 0.0;
        kinds[c] = ColumnKind::binary;
    }
    std::vector<double> values;
    values.reserve(matrix.rows() * matrix.cols());
    for (auto& col : cols) values.insert(values.end(), col.begin(), col.end());
    return FeatureMatrix(matrix.names(), std::move(kinds), std::move(values), matrix.rows());
}

std::vector<double> SplitView::column(std::size_t col) const {
    auto full = dataset_->features.column(col);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (std::size_t r : rows_) out.push_back(full[r]);
    return out;
}

std::vector<std::uint8_t> SplitView::bit_column(std::size_t col) const {
    auto full = dataset_->features.column(col);
    std::vector<std::uint8_t> out;
    out.reserve(rows_.size());
    for (std::size_t r : rows_) out.push_back(full[r] > 0.0 ? 1 : 0);
    return out;
}

std::vector<std::uint8_t> SplitView::labels() const {
    std::vector<std::uint8_t> out;
    out.reserve(rows_.size());
    for (std::size_t r : rows_) out.push_back(dataset_->labels[r]);
    return out;
}

SplitView fit_view(const LabeledDataset& dataset) {
    if (!dataset.split) {
        throw ValidationError("dataset has no split tags; supply a split column (train|valid|test)");
    }
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < dataset.split->size(); ++r) {
        if ((*dataset.split)[r] != Split::test) rows.push_back(r);
    }
    if (rows.empty()) throw ValidationError("fit view is empty: no train or valid rows");
    return SplitView(dataset, std::move(rows));
}

LabeledDataset with_all_train(LabeledDataset dataset) {
    dataset.split = std::vector<Split>(dataset.rows(), Split::train);
    return dataset;
}

}  // namespace hamfex
