#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "featsel/dataset.hpp"
#include "test_util.hpp"

using namespace featsel;

namespace {

std::string fixture_path() {
  return std::string(FEATSEL_DATA_DIR) + "/kdd_fixture_1000.csv";
}

// A well-formed 42-field line with recognizable values.
std::string sample_line(const std::string& label) {
  return "0,tcp,http,SF,215,45076,0,0,0,0,0,1,0,0,0,0,0,0,0,0,0,0,1,1,"
         "0.00,0.00,0.00,0.00,1.00,0.00,0.00,0,0,0.00,0.00,0.00,0.00,"
         "0.00,0.00,0.00,0.00," +
         label;
}

}  // namespace

TEST_CASE("parse_kdd_record strips the trailing period from the label") {
  CHECK(parse_kdd_record(sample_line("smurf.")).subcategory == "smurf");
  CHECK(parse_kdd_record(sample_line("normal.")).subcategory == "normal");
  CHECK(parse_kdd_record(sample_line("normal")).subcategory == "normal");
}

TEST_CASE("parse_kdd_record keeps symbolic fields and parses numerics") {
  const KddRecord record = parse_kdd_record(sample_line("normal."));
  CHECK(record.symbolic[0] == "tcp");
  CHECK(record.symbolic[1] == "http");
  CHECK(record.symbolic[2] == "SF");
  CHECK(record.numeric[0] == 0.0);
  CHECK(record.numeric[4] == 215.0);
  CHECK(record.numeric[5] == 45076.0);
  CHECK(record.numeric[28] == 1.0);
}

TEST_CASE("parse_kdd_record rejects bad field counts with the line number") {
  CHECK_THROWS_AS(parse_kdd_record("1,2,3", 17), ParseError);
  try {
    parse_kdd_record("1,2,3", 17);
  } catch (const ParseError& e) {
    CHECK(e.line() == 17);
    CHECK(std::string(e.what()).find("42") != std::string::npos);
  }
}

TEST_CASE("parse_kdd_record rejects non-numeric values in numeric columns") {
  std::string line = sample_line("normal.");
  const auto pos = line.find("215");
  line.replace(pos, 3, "oops");
  CHECK_THROWS_AS(parse_kdd_record(line, 3), ParseError);
}

TEST_CASE("builtin category map matches the published table") {
  const CategoryMap map = CategoryMap::builtin();
  const auto id = [&](const char* name) {
    return map.categories()[static_cast<std::size_t>(map.category_of(name))];
  };
  CHECK(id("neptune") == "dos");
  CHECK(id("normal") == "normal");
  CHECK(id("buffer_overflow") == "u2r");
  CHECK(id("spy") == "r2l");
  CHECK(id("satan") == "probe");
  CHECK(map.subcategory_count() == 23);
  CHECK_THROWS_WITH_AS(static_cast<void>(map.category_of("snmpguess")),
                       doctest::Contains("snmpguess"), ArgumentError);
}

TEST_CASE("category map file override") {
  const std::string path = "category_map_override.csv";
  {
    std::ofstream out(path);
    out << "alpha,dos\nbeta,custom\n";
  }
  const CategoryMap map = CategoryMap::from_file(path);
  CHECK(map.categories()[static_cast<std::size_t>(map.category_of("alpha"))] ==
        "dos");
  CHECK(map.categories()[static_cast<std::size_t>(map.category_of("beta"))] ==
        "custom");
}

TEST_CASE("encoder assigns lexicographic ordinal codes") {
  const CategoricalEncoder encoder =
      CategoricalEncoder::fit({{"tcp", "udp", "icmp", "tcp"}});
  CHECK(encoder.encode(0, "icmp") == 0);
  CHECK(encoder.encode(0, "tcp") == 1);
  CHECK(encoder.encode(0, "udp") == 2);
  CHECK(encoder.decode(0, 1) == "tcp");

  const CategoricalEncoder single = CategoricalEncoder::fit({{"only", "only"}});
  CHECK(single.encode(0, "only") == 0);
}

TEST_CASE("encoding is deterministic and idempotent over a vocabulary") {
  std::mt19937_64 rng(7);
  std::vector<std::string> values;
  const char* pool[] = {"http", "smtp", "ftp", "ssh", "dns"};
  for (int i = 0; i < 200; ++i)
    values.push_back(pool[testutil::uindex(rng, 5)]);
  const CategoricalEncoder a = CategoricalEncoder::fit({values});
  std::reverse(values.begin(), values.end());
  const CategoricalEncoder b = CategoricalEncoder::fit({values});
  for (const char* v : pool) CHECK(a.encode(0, v) == b.encode(0, v));
  for (std::size_t code = 0; code < 5; ++code)
    CHECK(a.encode(0, a.decode(0, code)) == code);
}

TEST_CASE("fit_minmax finds per-feature ranges") {
  FeatureMatrix m(3, 3);
  const double values[3][3] = {{0, 5, 0}, {42448, 5, 28}, {100, 5, 7}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m.at(r, c) = values[r][c];
  const NormalizerParams params = fit_minmax(m);
  CHECK(params.min[0] == 0.0);
  CHECK(params.max[0] == 42448.0);
  CHECK(params.min[1] == 5.0);
  CHECK(params.max[1] == 5.0);
  CHECK(params.min[2] == 0.0);
  CHECK(params.max[2] == 28.0);
}

TEST_CASE("apply_minmax maps endpoints, constants and out-of-range values") {
  FeatureMatrix train(2, 2);
  train.at(0, 0) = 0.0;
  train.at(1, 0) = 42448.0;
  train.at(0, 1) = 5.0;
  train.at(1, 1) = 5.0;
  const NormalizerParams params = fit_minmax(train);

  FeatureMatrix normalized = apply_minmax(train, params);
  CHECK(normalized.at(1, 0) == 1.0);
  CHECK(normalized.at(0, 1) == 0.0);  // constant feature maps to 0
  CHECK(normalized.at(1, 1) == 0.0);

  // Test-fold value outside the fitted range stays unclamped.
  FeatureMatrix test(1, 2);
  test.at(0, 0) = 50.0;
  test.at(0, 1) = 5.0;
  NormalizerParams narrow;
  narrow.min = {0.0, 0.0};
  narrow.max = {28.0, 1.0};
  const FeatureMatrix mapped = apply_minmax(test, narrow);
  CHECK(mapped.at(0, 0) == doctest::Approx(50.0 / 28.0));
  CHECK(mapped.at(0, 0) > 1.0);

  NormalizerParams wrong;
  wrong.min = {0.0};
  wrong.max = {1.0};
  CHECK_THROWS_AS(apply_minmax(test, wrong), DimensionError);
}

TEST_CASE("apply_minmax after fit keeps non-constant features in [0,1]") {
  std::mt19937_64 rng(11);
  const FeatureMatrix m = testutil::random_matrix(rng, 50, 8, -100.0, 100.0);
  const FeatureMatrix normalized = apply_minmax(m, fit_minmax(m));
  for (std::size_t r = 0; r < normalized.rows(); ++r)
    for (std::size_t c = 0; c < normalized.cols(); ++c) {
      CHECK(normalized.at(r, c) >= 0.0);
      CHECK(normalized.at(r, c) <= 1.0);
    }
}

TEST_CASE("stratified folds balance every category") {
  std::vector<int> labels;
  for (int i = 0; i < 50; ++i) labels.push_back(0);
  for (int i = 0; i < 50; ++i) labels.push_back(1);
  const FoldPlan plan = stratified_folds(labels, 10, 42);
  for (std::size_t f = 0; f < 10; ++f) {
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (plan.assignments[i] != f) continue;
      (labels[i] == 0 ? a : b)++;
    }
    CHECK(a == 5);
    CHECK(b == 5);
  }
}

TEST_CASE("a two-sample category lands in exactly two distinct folds") {
  std::vector<int> labels(100, 0);
  labels[13] = 1;
  labels[77] = 1;
  const FoldPlan plan = stratified_folds(labels, 10, 9);
  CHECK(plan.assignments[13] != plan.assignments[77]);
}

TEST_CASE("fold plans partition the index range") {
  std::mt19937_64 rng(5);
  std::vector<int> labels(237);
  for (auto& l : labels) l = static_cast<int>(testutil::uindex(rng, 4));
  const FoldPlan plan = stratified_folds(labels, 10, 3);
  REQUIRE(plan.assignments.size() == labels.size());
  std::vector<std::size_t> seen;
  for (std::size_t f = 0; f < plan.n_folds; ++f)
    for (std::size_t i : plan.test_indices(f)) seen.push_back(i);
  std::sort(seen.begin(), seen.end());
  REQUIRE(seen.size() == labels.size());
  for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == i);

  // Per-category fold sizes differ by at most one.
  for (int cat = 0; cat < 4; ++cat) {
    std::vector<std::size_t> sizes(plan.n_folds, 0);
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cat) ++sizes[plan.assignments[i]];
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    CHECK(*hi - *lo <= 1);
  }
}

TEST_CASE("fold plans are deterministic under the seed") {
  std::vector<int> labels(64, 0);
  for (std::size_t i = 0; i < 64; i += 3) labels[i] = 1;
  const FoldPlan a = stratified_folds(labels, 8, 123);
  const FoldPlan b = stratified_folds(labels, 8, 123);
  const FoldPlan c = stratified_folds(labels, 8, 124);
  CHECK(a.assignments == b.assignments);
  CHECK(a.assignments != c.assignments);
  CHECK_THROWS_AS(stratified_folds(labels, 1, 0), ArgumentError);
}

TEST_CASE("round-robin folds partition without stratification") {
  const FoldPlan plan = round_robin_folds(103, 10, 4);
  REQUIRE(plan.assignments.size() == 103);
  std::vector<std::size_t> sizes(10, 0);
  for (std::size_t f : plan.assignments) ++sizes[f];
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  CHECK(*hi - *lo <= 1);
  const FoldPlan again = round_robin_folds(103, 10, 4);
  CHECK(plan.assignments == again.assignments);
}

TEST_CASE("stratified subsample is proportional and deterministic") {
  std::mt19937_64 rng(21);
  featsel::LabeledDataset ds = testutil::random_dataset(rng, 400, 3, 4);

  SUBCASE("identity at full size") {
    const LabeledDataset full = stratified_subsample(ds, ds.size(), 1);
    CHECK(full.size() == ds.size());
    CHECK(full.labels == ds.labels);
  }

  SUBCASE("largest-remainder proportions, every category kept") {
    const std::size_t target = 57;
    const LabeledDataset sub = stratified_subsample(ds, target, 5);
    CHECK(sub.size() == target);
    const auto before = ds.category_counts();
    const auto after = sub.category_counts();
    for (std::size_t c = 0; c < before.size(); ++c) {
      CHECK(after[c] >= 1);
      const double exact = static_cast<double>(target) *
                           static_cast<double>(before[c]) /
                           static_cast<double>(ds.size());
      CHECK(std::abs(static_cast<double>(after[c]) - exact) <= 1.0);
    }
  }

  SUBCASE("same seed, same rows") {
    const LabeledDataset a = stratified_subsample(ds, 100, 77);
    const LabeledDataset b = stratified_subsample(ds, 100, 77);
    CHECK(a.labels == b.labels);
    CHECK(a.matrix.values() == b.matrix.values());
  }

  SUBCASE("target below category count is rejected") {
    CHECK_THROWS_AS(stratified_subsample(ds, 2, 0), ArgumentError);
  }
}

TEST_CASE("bundled fixture parses with the expected structure") {
  const LabeledDataset ds = load_kdd(fixture_path());
  CHECK(ds.size() == 1000);
  CHECK(ds.matrix.cols() == kKddFeatureCount);
  CHECK(ds.categories.size() == 5);

  const auto counts = ds.category_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) CHECK(counts[c] >= 2);

  // dos dominates and normal is the second-largest block, like the original.
  const std::size_t dos = counts[1];
  const std::size_t normal = counts[0];
  CHECK(dos > 700);
  CHECK(normal > 150);

  std::set<std::string> subcats(ds.subcategories.begin(),
                                ds.subcategories.end());
  CHECK(subcats.size() == 23);

  // Encoded symbolic columns hold small ordinals, not raw strings.
  for (std::size_t symbolic : kKddSymbolicColumns) {
    for (std::size_t r = 0; r < 20; ++r) {
      const double v = ds.matrix.at(r, symbolic);
      CHECK(v == std::floor(v));
      CHECK(v >= 0.0);
      CHECK(v < 100.0);
    }
  }
}

TEST_CASE("gzip-compressed input parses identically") {
  const std::string plain = "gzip_roundtrip_plain.csv";
  {
    std::ofstream out(plain);
    out << sample_line("smurf.") << "\n" << sample_line("normal.") << "\n";
  }
  REQUIRE(std::system(("gzip -kf " + plain).c_str()) == 0);
  const auto a = read_kdd_records(plain);
  const auto b = read_kdd_records(plain + ".gz");
  REQUIRE(a.size() == 2);
  REQUIRE(b.size() == 2);
  CHECK(a[0].subcategory == b[0].subcategory);
  CHECK(a[1].numeric[4] == b[1].numeric[4]);
}

TEST_CASE("missing file raises an io error") {
  CHECK_THROWS_AS(read_kdd_records("does_not_exist.csv"), IoError);
}
