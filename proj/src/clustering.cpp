#include "featsel/clustering.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace featsel {

SimilarityMatrix symmetrized(SimilarityMatrix matrix, Symmetrize mode) {
  if (mode == Symmetrize::None) return matrix;
  for (std::size_t i = 0; i < matrix.size; ++i) {
    for (std::size_t j = i + 1; j < matrix.size; ++j) {
      const double a = matrix.at(i, j);
      const double b = matrix.at(j, i);
      const double v = mode == Symmetrize::Min ? std::min(a, b) : std::max(a, b);
      matrix.at(i, j) = v;
      matrix.at(j, i) = v;
    }
  }
  return matrix;
}

namespace {

// Distance from `feature` to its k-th nearest member of `pool` (which must
// contain `feature`). Ties in distance resolve toward lower feature index,
// inherited from the pool's ascending order.
double kth_neighbor_distance(const SimilarityMatrix& matrix,
                             const std::vector<std::size_t>& pool,
                             std::size_t feature, std::size_t k,
                             std::vector<double>& scratch) {
  if (k == 0) return 0.0;
  scratch.clear();
  for (std::size_t other : pool) {
    if (other == feature) continue;
    scratch.push_back(matrix.at(feature, other));
  }
  std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
  return scratch[k - 1];
}

}  // namespace

ClusteringRun run_knn_partition(const SimilarityMatrix& matrix, std::size_t k) {
  const std::size_t d = matrix.size;
  if (d == 0) throw ArgumentError("empty similarity matrix");
  if (k < 1 || k > d - 1)
    throw ArgumentError("neighbor count k must be in [1, D-1]");

  ClusteringRun run;
  run.decisions.assign(d, ClusterDecision{});
  std::vector<std::size_t> pool(d);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<double> scratch;
  scratch.reserve(d);

  while (!pool.empty()) {
    const std::size_t k_eff = std::min(k, pool.size() - 1);

    std::size_t best = pool.front();
    double best_radius = 0.0;
    if (k_eff > 0) {
      best_radius = kth_neighbor_distance(matrix, pool, best, k_eff, scratch);
      for (std::size_t idx = 1; idx < pool.size(); ++idx) {
        const std::size_t candidate = pool[idx];
        const double radius =
            kth_neighbor_distance(matrix, pool, candidate, k_eff, scratch);
        if (radius < best_radius) {
          best = candidate;
          best_radius = radius;
        }
      }
    }

    run.kept.push_back(best);
    run.kept_radius.push_back(best_radius);
    run.decisions[best] = {ClusterDecision::Kind::Kept, best, 0.0, best_radius};

    // Discard the k_eff nearest neighbors of the new representative.
    std::vector<std::pair<double, std::size_t>> neighbors;
    neighbors.reserve(pool.size() - 1);
    for (std::size_t other : pool) {
      if (other == best) continue;
      neighbors.emplace_back(matrix.at(best, other), other);
    }
    std::sort(neighbors.begin(), neighbors.end());
    std::vector<std::size_t> removed;
    removed.reserve(k_eff + 1);
    removed.push_back(best);
    for (std::size_t i = 0; i < k_eff; ++i) {
      const auto& [distance, neighbor] = neighbors[i];
      run.decisions[neighbor] = {ClusterDecision::Kind::Discarded, best,
                                 distance, best_radius};
      removed.push_back(neighbor);
    }
    std::sort(removed.begin(), removed.end());
    std::vector<std::size_t> next;
    next.reserve(pool.size() - removed.size());
    std::set_difference(pool.begin(), pool.end(), removed.begin(),
                        removed.end(), std::back_inserter(next));
    pool = std::move(next);
  }
  return run;
}

SelectionResult select_by_clustering(const FeatureMatrix& matrix,
                                     const ClusterSelectionParams& params) {
  const std::size_t d = matrix.cols();
  const std::size_t target = params.target_count;
  if (target < 1 || target > d)
    throw ArgumentError("target_count must be in [1, D]");

  SelectionResult result;
  result.selector = to_string(params.measure);

  SimilarityMatrix sim = symmetrized(
      build_similarity_matrix(matrix, params.measure, params.threads),
      params.symmetrize);

  if (target == d) {
    result.kept.resize(d);
    std::iota(result.kept.begin(), result.kept.end(), 0);
    result.scores.assign(d, 0.0);
    return result;
  }

  // The pass at neighbor count k yields ceil(D / (k+1)) representatives, so
  // the count is monotone nonincreasing in k. Find the largest k that still
  // yields at least `target`, then trim; when even k=1 yields too few, pad
  // back discarded features, least well represented first.
  std::map<std::size_t, ClusteringRun> runs;
  auto kept_count = [&](std::size_t k) -> std::size_t {
    auto it = runs.find(k);
    if (it == runs.end()) it = runs.emplace(k, run_knn_partition(sim, k)).first;
    return it->second.kept.size();
  };

  std::size_t lo = 1;
  std::size_t hi = d - 1;
  std::size_t best_k = 0;
  while (lo <= hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (kept_count(mid) >= target) {
      best_k = mid;
      lo = mid + 1;
    } else {
      if (mid == 1) break;
      hi = mid - 1;
    }
  }

  struct Entry {
    std::size_t index;
    double score;
  };
  std::vector<Entry> entries;

  if (best_k != 0) {
    const ClusteringRun& run = runs.at(best_k);
    entries.reserve(run.kept.size());
    for (std::size_t i = 0; i < run.kept.size(); ++i)
      entries.push_back({run.kept[i], run.kept_radius[i]});
    // Trim the least representative features (largest k-NN radius) until the
    // requested count is met; ties drop the higher index.
    while (entries.size() > target) {
      std::size_t worst = 0;
      for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].score > entries[worst].score ||
            (entries[i].score == entries[worst].score &&
             entries[i].index > entries[worst].index))
          worst = i;
      }
      entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(worst));
    }
  } else {
    // No admissible k reaches the target (it exceeds the k=1 yield of
    // ceil(D/2)). Keep the k=1 representatives and pad with discarded
    // features, most dissimilar to their representative first.
    kept_count(1);
    const ClusteringRun& run = runs.at(1);
    entries.reserve(target);
    for (std::size_t i = 0; i < run.kept.size(); ++i)
      entries.push_back({run.kept[i], run.kept_radius[i]});
    std::vector<Entry> discarded;
    for (std::size_t f = 0; f < d; ++f)
      if (run.decisions[f].kind == ClusterDecision::Kind::Discarded)
        discarded.push_back({f, run.decisions[f].distance});
    std::sort(discarded.begin(), discarded.end(), [](const Entry& a, const Entry& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.index < b.index;
    });
    for (const Entry& e : discarded) {
      if (entries.size() == target) break;
      entries.push_back(e);
    }
  }

  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  result.kept.reserve(entries.size());
  result.scores.reserve(entries.size());
  for (const Entry& e : entries) {
    result.kept.push_back(e.index);
    result.scores.push_back(e.score);
  }
  return result;
}

}  // namespace featsel
