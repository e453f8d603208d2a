#include "featsel/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "featsel/parallel.hpp"

namespace featsel {

// ---------------------------------------------------------------------------
// KNN

KnnModel KnnModel::fit(FeatureMatrix train, std::vector<int> labels,
                       std::size_t k) {
  if (train.rows() == 0) throw ArgumentError("empty training set");
  if (labels.size() != train.rows())
    throw DimensionError("label count does not match training rows");
  if (k < 1 || k > train.rows())
    throw ArgumentError("k must be in [1, number of training samples]");
  KnnModel model;
  model.train_ = std::move(train);
  model.labels_ = std::move(labels);
  model.k_ = k;
  return model;
}

int KnnModel::predict(std::span<const double> query) const {
  const std::size_t n = train_.rows();
  const std::size_t d = train_.cols();
  if (query.size() != d)
    throw DimensionError("query has " + std::to_string(query.size()) +
                         " features, model expects " + std::to_string(d));

  // Max-heap of the k nearest under the total order (distance, index).
  using Neighbor = std::pair<double, std::size_t>;
  std::vector<Neighbor> heap;
  heap.reserve(k_ + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> row = train_.row(i);
    double dist = 0.0;
    for (std::size_t f = 0; f < d; ++f) {
      const double diff = query[f] - row[f];
      dist += diff * diff;
    }
    const Neighbor candidate{dist, i};
    if (heap.size() < k_) {
      heap.push_back(candidate);
      std::push_heap(heap.begin(), heap.end());
    } else if (candidate < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = candidate;
      std::push_heap(heap.begin(), heap.end());
    }
  }
  std::sort_heap(heap.begin(), heap.end());

  int max_label = 0;
  for (const auto& [dist, idx] : heap)
    max_label = std::max(max_label, labels_[idx]);
  std::vector<std::size_t> votes(static_cast<std::size_t>(max_label) + 1, 0);
  for (const auto& [dist, idx] : heap)
    ++votes[static_cast<std::size_t>(labels_[idx])];
  const std::size_t top = *std::max_element(votes.begin(), votes.end());
  // Vote ties resolve to the class of the nearest neighbor among the tied
  // classes; the heap is already in (distance, index) order.
  for (const auto& [dist, idx] : heap) {
    const int label = labels_[idx];
    if (votes[static_cast<std::size_t>(label)] == top) return label;
  }
  return labels_[heap.front().second];
}

std::vector<int> KnnModel::predict_batch(const FeatureMatrix& queries,
                                         unsigned threads) const {
  std::vector<int> out(queries.rows(), 0);
  parallel_for(queries.rows(), threads,
               [&](std::size_t i) { out[i] = predict(queries.row(i)); });
  return out;
}

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

NaiveBayesModel NaiveBayesModel::fit(const FeatureMatrix& train,
                                     std::span<const int> labels,
                                     std::size_t n_classes, double epsilon) {
  const std::size_t n = train.rows();
  const std::size_t d = train.cols();
  if (n == 0) throw ArgumentError("empty training set");
  if (labels.size() != n)
    throw DimensionError("label count does not match training rows");
  if (n_classes < 1) throw ArgumentError("need at least one class");
  if (epsilon < 0.0) throw ArgumentError("epsilon must be nonnegative");

  NaiveBayesModel model;
  model.n_classes_ = n_classes;
  model.n_features_ = d;
  model.priors_.assign(n_classes, 0.0);
  model.means_.assign(n_classes * d, 0.0);
  model.variances_.assign(n_classes * d, 0.0);

  std::vector<std::size_t> counts(n_classes, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = static_cast<std::size_t>(labels[i]);
    ++counts[c];
    const std::span<const double> row = train.row(i);
    double* mean = model.means_.data() + c * d;
    for (std::size_t f = 0; f < d; ++f) mean[f] += row[f];
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (counts[c] == 0)
      throw DegenerateClassError("class " + std::to_string(c) +
                                 " has no training samples");
    const double inv = 1.0 / static_cast<double>(counts[c]);
    model.priors_[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
    double* mean = model.means_.data() + c * d;
    for (std::size_t f = 0; f < d; ++f) mean[f] *= inv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = static_cast<std::size_t>(labels[i]);
    const std::span<const double> row = train.row(i);
    const double* mean = model.means_.data() + c * d;
    double* var = model.variances_.data() + c * d;
    for (std::size_t f = 0; f < d; ++f) {
      const double diff = row[f] - mean[f];
      var[f] += diff * diff;
    }
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    const double inv = 1.0 / static_cast<double>(counts[c]);
    double* var = model.variances_.data() + c * d;
    for (std::size_t f = 0; f < d; ++f) var[f] = std::max(var[f] * inv, epsilon);
  }
  return model;
}

std::vector<double> NaiveBayesModel::log_posteriors(
    std::span<const double> query) const {
  if (query.size() != n_features_)
    throw DimensionError("query has " + std::to_string(query.size()) +
                         " features, model expects " +
                         std::to_string(n_features_));
  constexpr double log_two_pi = 1.8378770664093454836;  // ln(2*pi)
  std::vector<double> scores(n_classes_, 0.0);
  for (std::size_t c = 0; c < n_classes_; ++c) {
    double score = std::log(priors_[c]);
    const double* mean = means_.data() + c * n_features_;
    const double* var = variances_.data() + c * n_features_;
    for (std::size_t f = 0; f < n_features_; ++f) {
      const double diff = query[f] - mean[f];
      score += -0.5 * (log_two_pi + std::log(var[f])) -
               diff * diff / (2.0 * var[f]);
    }
    scores[c] = score;
  }
  return scores;
}

int NaiveBayesModel::predict(std::span<const double> query) const {
  const std::vector<double> scores = log_posteriors(query);
  // Plain > comparison: NaN scores never win, which surfaces the epsilon=0
  // zero-variance failure instead of hiding it.
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c)
    if (scores[c] > scores[best]) best = c;
  return static_cast<int>(best);
}

std::vector<int> NaiveBayesModel::predict_batch(const FeatureMatrix& queries,
                                                unsigned threads) const {
  std::vector<int> out(queries.rows(), 0);
  parallel_for(queries.rows(), threads,
               [&](std::size_t i) { out[i] = predict(queries.row(i)); });
  return out;
}

}  // namespace featsel
