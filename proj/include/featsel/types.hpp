#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace featsel {

// Base for data-level failures. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad record or unparseable field; carries the 1-based source line when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A declared class with no samples where at least one is required.
class DegenerateClassError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Dense row-major numeric table with named columns.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols,
                std::vector<std::string> feature_names = {});

  double at(std::size_t row, std::size_t col) const {
    return values_[row * cols_ + col];
  }
  double& at(std::size_t row, std::size_t col) {
    return values_[row * cols_ + col];
  }

  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::vector<double> column(std::size_t c) const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  const std::vector<std::string>& feature_names() const { return names_; }
  std::vector<std::string>& feature_names() { return names_; }

  // New matrix containing only the given columns, in the given order.
  FeatureMatrix restrict_columns(std::span<const std::size_t> kept) const;
  FeatureMatrix select_rows(std::span<const std::size_t> rows) const;

  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  std::vector<std::string> names_;
};

// Feature matrix plus per-sample category label and original attack name.
struct LabeledDataset {
  FeatureMatrix matrix;
  std::vector<int> labels;                 // category id per row, in [0, K)
  std::vector<std::string> categories;     // id -> category name
  std::vector<std::string> subcategories;  // original label per row

  std::size_t size() const { return matrix.rows(); }
  std::vector<std::size_t> category_counts() const;
};

// Row subset of a dataset, preserving order.
LabeledDataset select_rows(const LabeledDataset& ds,
                           std::span<const std::size_t> rows);

// Drops categories with zero samples and renumbers labels accordingly.
LabeledDataset drop_empty_categories(const LabeledDataset& ds);

}  // namespace featsel
