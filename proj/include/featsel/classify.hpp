#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "featsel/types.hpp"

namespace featsel {

// Brute-force k-nearest-neighbor classifier over Euclidean distance.
// Majority vote among the k nearest; vote ties go to the class of the
// nearest neighbor among the tied classes; distance ties go to the lower
// training index.
class KnnModel {
 public:
  static KnnModel fit(FeatureMatrix train, std::vector<int> labels,
                      std::size_t k);

  int predict(std::span<const double> query) const;
  std::vector<int> predict_batch(const FeatureMatrix& queries,
                                 unsigned threads = 1) const;

  std::size_t k() const { return k_; }
  std::size_t train_size() const { return train_.rows(); }

 private:
  FeatureMatrix train_;
  std::vector<int> labels_;
  std::size_t k_ = 1;
};

// Gaussian naive Bayes in log space. Per-class per-feature population
// mean/variance with the variance replaced by max(variance, epsilon).
// epsilon = 0 is allowed and reproduces the zero-variance NaN failure.
class NaiveBayesModel {
 public:
  static NaiveBayesModel fit(const FeatureMatrix& train,
                             std::span<const int> labels,
                             std::size_t n_classes, double epsilon);

  // log prior + sum of log Gaussian densities, one entry per class.
  std::vector<double> log_posteriors(std::span<const double> query) const;

  // argmax of log_posteriors; ties go to the lower class id.
  int predict(std::span<const double> query) const;
  std::vector<int> predict_batch(const FeatureMatrix& queries,
                                 unsigned threads = 1) const;

  std::size_t n_classes() const { return n_classes_; }
  std::size_t n_features() const { return n_features_; }
  double prior(std::size_t c) const { return priors_[c]; }
  double mean(std::size_t c, std::size_t d) const {
    return means_[c * n_features_ + d];
  }
  double variance(std::size_t c, std::size_t d) const {
    return variances_[c * n_features_ + d];
  }

 private:
  std::size_t n_classes_ = 0;
  std::size_t n_features_ = 0;
  std::vector<double> priors_;
  std::vector<double> means_;      // row-major K x D
  std::vector<double> variances_;  // row-major K x D, floored
};

}  // namespace featsel
