#include "featsel/ffr.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "featsel/dataset.hpp"

namespace featsel {

ClassMeanTable class_means(const LabeledDataset& ds) {
  const std::size_t k = ds.categories.size();
  const std::size_t d = ds.matrix.cols();
  ClassMeanTable table;
  table.n_classes = k;
  table.n_features = d;
  table.means.assign(k * d, 0.0);
  table.class_counts.assign(k, 0);

  for (std::size_t r = 0; r < ds.matrix.rows(); ++r) {
    const std::size_t c = static_cast<std::size_t>(ds.labels[r]);
    ++table.class_counts[c];
    const std::span<const double> row = ds.matrix.row(r);
    double* acc = table.means.data() + c * d;
    for (std::size_t f = 0; f < d; ++f) acc[f] += row[f];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (table.class_counts[c] == 0)
      throw DegenerateClassError("class '" + ds.categories[c] +
                                 "' has no samples");
    const double inv = 1.0 / static_cast<double>(table.class_counts[c]);
    double* row = table.means.data() + c * d;
    for (std::size_t f = 0; f < d; ++f) row[f] *= inv;
  }
  return table;
}

FfrScores ffr_scores(const ClassMeanTable& table) {
  const std::size_t k = table.n_classes;
  const std::size_t d = table.n_features;
  if (k < 2) throw ArgumentError("scoring needs at least 2 classes");

  FfrScores out;
  out.scores.assign(d, 0.0);
  out.mean_of_class_means.assign(d, 0.0);
  const double inv_k = 1.0 / static_cast<double>(k);
  for (std::size_t f = 0; f < d; ++f) {
    double mu = 0.0;
    for (std::size_t c = 0; c < k; ++c) mu += table.at(c, f);
    mu *= inv_k;
    double var = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double diff = table.at(c, f) - mu;
      var += diff * diff;
    }
    out.mean_of_class_means[f] = mu;
    out.scores[f] = var * inv_k;
  }
  return out;
}

SelectionResult select_top_t(const FfrScores& scores, std::size_t t) {
  const std::size_t d = scores.scores.size();
  if (t < 1 || t > d) throw ArgumentError("t must be in [1, D]");

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores.scores[a] != scores.scores[b])
      return scores.scores[a] > scores.scores[b];
    return a < b;
  });

  SelectionResult result;
  result.selector = "ffr";
  result.kept.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
  result.scores.reserve(t);
  for (std::size_t f : result.kept) result.scores.push_back(scores.scores[f]);
  return result;
}

SelectionResult ffr_select(const LabeledDataset& ds, std::size_t t,
                           bool normalize) {
  const LabeledDataset* input = &ds;
  LabeledDataset normalized;
  if (normalize) {
    normalized.matrix = apply_minmax(ds.matrix, fit_minmax(ds.matrix));
    normalized.labels = ds.labels;
    normalized.categories = ds.categories;
    normalized.subcategories = ds.subcategories;
    input = &normalized;
  }
  const auto start = std::chrono::steady_clock::now();
  SelectionResult result = select_top_t(ffr_scores(class_means(*input)), t);
  const auto stop = std::chrono::steady_clock::now();
  result.elapsed_seconds =
      std::chrono::duration<double>(stop - start).count();
  return result;
}

}  // namespace featsel
