#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "featsel/dataset.hpp"
#include "featsel/selection.hpp"
#include "featsel/types.hpp"

namespace featsel {

struct ClassifierConfig {
  enum class Kind { Knn, Bayes };
  Kind kind = Kind::Knn;
  std::size_t knn_k = 5;
  double epsilon = 1e-9;
};

ClassifierConfig::Kind classifier_from_string(const std::string& name);
const char* to_string(ClassifierConfig::Kind kind);

struct EvalOptions {
  bool normalize = true;
  bool select_global = false;  // select once on the whole dataset instead of per fold
  unsigned threads = 1;
  std::size_t timing_repeats = 3;
};

// One (selector, feature count, classifier) result with fold-pooled counts.
struct EvalCell {
  std::string selector;
  std::size_t feature_count = 0;
  std::string classifier;
  std::vector<std::size_t> category_correct;
  std::vector<std::size_t> category_total;
  std::vector<double> per_category_recall;
  double overall_accuracy = 0.0;
  double selection_seconds = 0.0;
  std::string error;  // nonempty when the cell failed
};

// Leakage-free protocol: per fold, fit the normalizer on the training split,
// apply it to both splits, select features on the training split only, then
// fit/predict. Predictions are pooled over folds before computing recalls.
EvalCell run_cv(const LabeledDataset& ds, const SelectorConfig& selector,
                const ClassifierConfig& classifier, const FoldPlan& folds,
                const EvalOptions& options);

struct GridSpec {
  std::vector<SelectorKind> selectors = {SelectorKind::CC, SelectorKind::LSRE,
                                         SelectorKind::MICI, SelectorKind::FFR};
  std::vector<std::size_t> counts = {10, 20, 30};
  std::vector<ClassifierConfig::Kind> classifiers = {
      ClassifierConfig::Kind::Knn, ClassifierConfig::Kind::Bayes};
  std::size_t n_folds = 10;
  std::uint64_t seed = 42;
  bool stratified = true;
  std::size_t knn_k = 5;
  double epsilon = 1e-9;
  Symmetrize symmetrize = Symmetrize::None;
};

struct EvalReport {
  std::vector<std::string> categories;
  std::vector<EvalCell> cells;
  // dataset fingerprint
  std::size_t n_samples = 0;
  std::size_t n_features = 0;
  std::vector<std::size_t> category_counts;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config_echo;  // resolved run configuration
  // execution block: machine-dependent, excluded from reproducibility
  unsigned threads = 1;
  double total_seconds = 0.0;
};

// Full factorial grid plus the no-selection baseline per classifier. A
// failing cell is recorded with an error marker instead of aborting the grid.
EvalReport run_grid(const LabeledDataset& ds, const GridSpec& grid,
                    const EvalOptions& options,
                    nlohmann::ordered_json config_echo = {});

enum class ReportFormat { Json, Csv, Markdown };
ReportFormat report_format_from_string(const std::string& name);

nlohmann::ordered_json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::ordered_json& j);
std::string emit_report(const EvalReport& report, ReportFormat format);

// Removes the execution block and every *_seconds field so that reports can
// be compared across machines and thread counts.
void strip_timing(nlohmann::ordered_json& j);

}  // namespace featsel
