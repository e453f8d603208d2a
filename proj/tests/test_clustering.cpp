#include <doctest.h>

#include <algorithm>
#include <set>

#include "featsel/clustering.hpp"
#include "featsel/selection.hpp"
#include "test_util.hpp"

using namespace featsel;

namespace {

// Matrix whose columns form groups of near-identical features; cross-group
// columns are independent noise.
FeatureMatrix blocked_matrix(std::mt19937_64& rng, std::size_t rows,
                             const std::vector<std::size_t>& block_sizes) {
  std::size_t cols = 0;
  for (std::size_t b : block_sizes) cols += b;
  FeatureMatrix m(rows, cols);
  std::size_t col = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    std::vector<double> base = testutil::random_column(rng, rows);
    for (std::size_t j = 0; j < block_sizes[b]; ++j, ++col)
      for (std::size_t r = 0; r < rows; ++r)
        m.at(r, col) = base[r] + 1e-3 * testutil::urand(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("all-identical features reduce to the lowest index") {
  FeatureMatrix m(20, 6);
  std::mt19937_64 rng(3);
  for (std::size_t r = 0; r < 20; ++r) {
    const double v = testutil::urand(rng);
    for (std::size_t c = 0; c < 6; ++c) m.at(r, c) = v;
  }
  ClusterSelectionParams params;
  params.measure = Measure::CC;
  params.target_count = 1;
  const SelectionResult result = select_by_clustering(m, params);
  REQUIRE(result.kept.size() == 1);
  CHECK(result.kept[0] == 0);
}

TEST_CASE("two perfectly correlated groups give one representative each") {
  std::mt19937_64 rng(5);
  const std::size_t rows = 40;
  FeatureMatrix m(rows, 8);
  const auto a = testutil::random_column(rng, rows);
  const auto b = testutil::random_column(rng, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = (c + 1.0) * a[r] + c;
    for (std::size_t c = 4; c < 8; ++c) m.at(r, c) = (c - 2.0) * b[r] - c;
  }
  ClusterSelectionParams params;
  params.measure = Measure::CC;
  params.target_count = 2;
  const SelectionResult result = select_by_clustering(m, params);
  REQUIRE(result.kept.size() == 2);
  const bool first_in_a = result.kept[0] < 4;
  const bool second_in_a = result.kept[1] < 4;
  CHECK(first_in_a != second_in_a);
}

TEST_CASE("block structure yields one representative per block") {
  std::mt19937_64 rng(9);
  const FeatureMatrix m = blocked_matrix(rng, 60, {2, 2, 2});
  ClusterSelectionParams params;
  params.measure = Measure::CC;
  params.target_count = 3;
  const SelectionResult result = select_by_clustering(m, params);
  REQUIRE(result.kept.size() == 3);
  std::set<std::size_t> blocks;
  for (std::size_t f : result.kept) blocks.insert(f / 2);
  CHECK(blocks.size() == 3);

  // Every discarded feature sits closer to its kept representative than to
  // any cross-block feature.
  const SimilarityMatrix sim = build_similarity_matrix(m, Measure::CC);
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (std::find(result.kept.begin(), result.kept.end(), f) !=
        result.kept.end())
      continue;
    double to_rep = 2.0;
    for (std::size_t kept : result.kept)
      if (kept / 2 == f / 2) to_rep = sim.at(f, kept);
    for (std::size_t other = 0; other < m.cols(); ++other)
      if (other / 2 != f / 2) CHECK(to_rep <= sim.at(f, other));
  }
}

TEST_CASE("partition decisions respect the representative radius") {
  std::mt19937_64 rng(15);
  const FeatureMatrix m = testutil::random_matrix(rng, 50, 8);
  const SimilarityMatrix sim = build_similarity_matrix(m, Measure::MICI);
  for (std::size_t k = 1; k <= 7; ++k) {
    const ClusteringRun run = run_knn_partition(sim, k);
    for (std::size_t f = 0; f < 8; ++f) {
      const ClusterDecision& d = run.decisions[f];
      if (d.kind == ClusterDecision::Kind::Discarded)
        CHECK(d.distance <= d.radius);
    }
    // kept count is ceil(D / (k+1))
    CHECK(run.kept.size() == (8 + k) / (k + 1));
  }
}

TEST_CASE("exact target counts are met on a 41-feature matrix") {
  std::mt19937_64 rng(19);
  const FeatureMatrix m = testutil::random_matrix(rng, 120, 41);
  for (const Measure measure : {Measure::CC, Measure::LSRE, Measure::MICI}) {
    for (const std::size_t target : {10UL, 20UL, 30UL}) {
      ClusterSelectionParams params;
      params.measure = measure;
      params.target_count = target;
      const SelectionResult result = select_by_clustering(m, params);
      CHECK(result.kept.size() == target);
      std::set<std::size_t> unique(result.kept.begin(), result.kept.end());
      CHECK(unique.size() == target);
      for (std::size_t f : result.kept) CHECK(f < 41);
    }
  }
}

TEST_CASE("selection is deterministic") {
  std::mt19937_64 rng(23);
  const FeatureMatrix m = testutil::random_matrix(rng, 80, 17);
  ClusterSelectionParams params;
  params.measure = Measure::LSRE;
  params.target_count = 6;
  const SelectionResult a = select_by_clustering(m, params);
  const SelectionResult b = select_by_clustering(m, params);
  CHECK(a.kept == b.kept);
  CHECK(a.scores == b.scores);
}

TEST_CASE("invalid targets are rejected") {
  std::mt19937_64 rng(27);
  const FeatureMatrix m = testutil::random_matrix(rng, 30, 5);
  ClusterSelectionParams params;
  params.measure = Measure::CC;
  params.target_count = 6;
  CHECK_THROWS_AS(select_by_clustering(m, params), ArgumentError);
  params.target_count = 0;
  CHECK_THROWS_AS(select_by_clustering(m, params), ArgumentError);
}

TEST_CASE("lsre symmetrization modes change the matrix as requested") {
  std::mt19937_64 rng(31);
  const FeatureMatrix m = testutil::random_matrix(rng, 40, 6);
  const SimilarityMatrix base = build_similarity_matrix(m, Measure::LSRE);
  const SimilarityMatrix mn = symmetrized(base, Symmetrize::Min);
  const SimilarityMatrix mx = symmetrized(base, Symmetrize::Max);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(mn.at(i, j) == std::min(base.at(i, j), base.at(j, i)));
      CHECK(mx.at(i, j) == std::max(base.at(i, j), base.at(j, i)));
    }
}

TEST_CASE("selection timing uses the minimum over repeats and grows with D") {
  std::mt19937_64 rng(35);
  featsel::LabeledDataset ds = testutil::random_dataset(rng, 2000, 41, 3);

  SelectorConfig config;
  config.kind = SelectorKind::MICI;
  config.target_count = 5;

  std::vector<std::size_t> all(41);
  for (std::size_t i = 0; i < 41; ++i) all[i] = i;

  auto sliced = [&](std::size_t d) {
    featsel::LabeledDataset out;
    out.matrix = ds.matrix.restrict_columns(
        std::span<const std::size_t>(all.data(), d));
    out.labels = ds.labels;
    out.categories = ds.categories;
    out.subcategories = ds.subcategories;
    return out;
  };

  const double t10 = time_selection(sliced(10), config, 5);
  const double t20 = time_selection(sliced(20), config, 5);
  const double t41 = time_selection(sliced(41), config, 5);
  CHECK(t10 > 0.0);
  CHECK(t10 <= t20);
  CHECK(t20 <= t41);

  CHECK_THROWS_AS(time_selection(ds, config, 0), ArgumentError);
}
