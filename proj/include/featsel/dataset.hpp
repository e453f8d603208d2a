#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "featsel/types.hpp"

namespace featsel {

inline constexpr std::size_t kKddFeatureCount = 41;
// protocol_type, service, flag (0-based column positions)
inline constexpr std::array<std::size_t, 3> kKddSymbolicColumns = {1, 2, 3};

const std::vector<std::string>& kdd_feature_names();

// One parsed connection record. Symbolic fields stay strings until encoding;
// their numeric slots are left at zero.
struct KddRecord {
  std::array<double, kKddFeatureCount> numeric{};
  std::array<std::string, 3> symbolic;
  std::string subcategory;
};

// Splits a 42-field KDD line into 41 feature fields and the label (trailing
// period stripped). line_number is used for error messages only.
KddRecord parse_kdd_record(std::string_view line, std::size_t line_number = 0);

// Reads a KDD CSV, plain or gzip-compressed. Blank lines are skipped.
std::vector<KddRecord> read_kdd_records(const std::string& path);

// Fixed five-category scheme plus the subcategory -> category table.
class CategoryMap {
 public:
  static CategoryMap builtin();
  // Two-column text file: subcategory,category. Category names outside the
  // builtin five are appended in first-seen order.
  static CategoryMap from_file(const std::string& path);

  int category_of(const std::string& subcategory) const;
  const std::vector<std::string>& categories() const { return categories_; }
  std::size_t subcategory_count() const { return map_.size(); }

 private:
  std::vector<std::string> categories_;
  std::map<std::string, int> map_;
};

// Ordinal encoding of symbolic columns; codes follow lexicographic
// vocabulary order, so two fits over the same value sets agree.
class CategoricalEncoder {
 public:
  static CategoricalEncoder fit(
      const std::vector<std::vector<std::string>>& columns);

  std::size_t encode(std::size_t column, const std::string& value) const;
  const std::string& decode(std::size_t column, std::size_t code) const;
  const std::vector<std::string>& vocabulary(std::size_t column) const {
    return vocab_[column];
  }
  std::size_t column_count() const { return vocab_.size(); }

 private:
  std::vector<std::vector<std::string>> vocab_;
};

CategoricalEncoder fit_encoder(const std::vector<KddRecord>& records);

// Replaces the three symbolic columns with their ordinal codes and parses
// everything else into a 41-column matrix.
FeatureMatrix encode_symbolic(const std::vector<KddRecord>& records,
                              const CategoricalEncoder& encoder);

LabeledDataset dataset_from_records(const std::vector<KddRecord>& records,
                                    const CategoryMap& map);
LabeledDataset load_kdd(const std::string& path,
                        const CategoryMap& map = CategoryMap::builtin());

// Per-feature min/max fitted on one split.
struct NormalizerParams {
  std::vector<double> min;
  std::vector<double> max;
  std::size_t size() const { return min.size(); }
};

NormalizerParams fit_minmax(const FeatureMatrix& matrix);

// (v - min) / (max - min); constant features map to 0. Values outside the
// fitted range are NOT clamped, so test-fold values may leave [0,1].
FeatureMatrix apply_minmax(const FeatureMatrix& matrix,
                           const NormalizerParams& params);

struct FoldPlan {
  std::size_t n_folds = 0;
  std::vector<std::size_t> assignments;  // row -> fold id

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;
};

// Within each category: shuffle by seed, then deal round-robin to folds.
FoldPlan stratified_folds(std::span<const int> labels, std::size_t n_folds,
                          std::uint64_t seed);
// Unstratified variant: shuffle all rows, deal round-robin.
FoldPlan round_robin_folds(std::size_t n_samples, std::size_t n_folds,
                           std::uint64_t seed);

// Proportional per-category sample (largest remainder), every nonempty
// category keeps at least one row. Row order of the original is preserved.
LabeledDataset stratified_subsample(const LabeledDataset& ds,
                                    std::size_t target_n, std::uint64_t seed);

}  // namespace featsel
