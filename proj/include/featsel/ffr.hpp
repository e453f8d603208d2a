#pragma once

#include <cstddef>
#include <vector>

#include "featsel/selection.hpp"
#include "featsel/types.hpp"

namespace featsel {

// K x D table of per-class per-feature means.
struct ClassMeanTable {
  std::size_t n_classes = 0;
  std::size_t n_features = 0;
  std::vector<double> means;               // row-major K x D
  std::vector<std::size_t> class_counts;   // n_c per class

  double at(std::size_t c, std::size_t d) const {
    return means[c * n_features + d];
  }
};

ClassMeanTable class_means(const LabeledDataset& ds);

// Per feature: variance of the K class means (population form) and the mean
// of the class means. A score of 0 means every class shares the same mean.
struct FfrScores {
  std::vector<double> scores;               // V_d
  std::vector<double> mean_of_class_means;  // mu_d
};

FfrScores ffr_scores(const ClassMeanTable& table);

// The t features with largest score, in descending score order; ties go to
// the lower feature index.
SelectionResult select_top_t(const FfrScores& scores, std::size_t t);

// Whole pipeline: optional min-max normalization over the given dataset,
// then class means -> scores -> top t. elapsed_seconds covers the scoring
// pipeline only, never the normalization.
SelectionResult ffr_select(const LabeledDataset& ds, std::size_t t,
                           bool normalize);

}  // namespace featsel
