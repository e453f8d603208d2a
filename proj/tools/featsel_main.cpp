#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "featsel/classify.hpp"
#include "featsel/dataset.hpp"
#include "featsel/evaluate.hpp"
#include "featsel/ffr.hpp"
#include "featsel/parallel.hpp"
#include "featsel/selection.hpp"
#include "featsel/similarity.hpp"

namespace {

using nlohmann::ordered_json;

unsigned env_default_threads() {
  if (const char* env = std::getenv("FEATSEL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return featsel::default_thread_count();
}

struct CommonOptions {
  std::string data;
  std::string category_map;
  std::size_t subsample = 0;
  std::uint64_t seed = 42;
  bool raw = false;
  unsigned threads = env_default_threads();
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_data = true) {
  auto* data = cmd->add_option("--data", opts.data, "input KDD CSV (.gz accepted)");
  if (needs_data) data->required();
  cmd->add_option("--category-map", opts.category_map,
                  "two-column subcategory,category file overriding the builtin map");
  cmd->add_option("--subsample", opts.subsample,
                  "stratified subsample size (0 = use all rows)");
  cmd->add_option("--seed", opts.seed, "seed for subsampling and folds");
  cmd->add_flag("--raw", opts.raw, "skip min-max normalization");
  cmd->add_option("--threads", opts.threads,
                  "parallelism cap (default: FEATSEL_THREADS or hardware)");
}

featsel::CategoryMap resolve_map(const CommonOptions& opts) {
  return opts.category_map.empty()
             ? featsel::CategoryMap::builtin()
             : featsel::CategoryMap::from_file(opts.category_map);
}

featsel::LabeledDataset load_dataset(const CommonOptions& opts) {
  featsel::LabeledDataset ds = featsel::load_kdd(opts.data, resolve_map(opts));
  if (opts.subsample > 0 && opts.subsample < ds.size())
    ds = featsel::stratified_subsample(ds, opts.subsample, opts.seed);
  return ds;
}

ordered_json common_echo(const std::string& subcommand,
                         const CommonOptions& opts) {
  ordered_json j;
  j["subcommand"] = subcommand;
  j["data"] = opts.data;
  j["category_map"] = opts.category_map.empty() ? "builtin" : opts.category_map;
  j["subsample"] = opts.subsample;
  j["seed"] = opts.seed;
  j["normalize"] = !opts.raw;
  return j;
}

std::string config_comment(const ordered_json& echo) {
  return "# featsel " + echo.dump() + "\n";
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw featsel::IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw featsel::IoError("error writing " + path);
}

// ---------------------------------------------------------------------------

struct IngestOptions : CommonOptions {
  std::string out;
};

void run_ingest(const IngestOptions& opts) {
  featsel::LabeledDataset ds = load_dataset(opts);

  std::map<std::string, std::size_t> subcategory_counts;
  for (const auto& s : ds.subcategories) ++subcategory_counts[s];
  const auto counts = ds.category_counts();

  std::cout << "rows: " << ds.size() << ", features: " << ds.matrix.cols()
            << "\n";
  for (std::size_t c = 0; c < ds.categories.size(); ++c)
    std::cout << ds.categories[c] << ": " << counts[c] << "\n";
  for (const auto& [name, count] : subcategory_counts)
    std::cout << "  " << name << ": " << count << "\n";

  if (opts.out.empty()) return;
  featsel::FeatureMatrix matrix = ds.matrix;
  if (!opts.raw)
    matrix = featsel::apply_minmax(matrix, featsel::fit_minmax(matrix));

  std::ostringstream body;
  body << config_comment(common_echo("ingest", opts));
  for (std::size_t c = 0; c < matrix.cols(); ++c)
    body << matrix.feature_names()[c] << ",";
  body << "category,subcategory\n";
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) body << matrix.at(r, c) << ",";
    body << ds.categories[static_cast<std::size_t>(ds.labels[r])] << ","
         << ds.subcategories[r] << "\n";
  }
  write_text(opts.out, body.str());
  std::cout << "wrote " << opts.out << "\n";
}

// ---------------------------------------------------------------------------

struct SimilarityOptions : CommonOptions {
  std::string measure = "cc";
  std::string out;
};

void run_similarity(const SimilarityOptions& opts) {
  featsel::LabeledDataset ds = load_dataset(opts);
  featsel::FeatureMatrix matrix = ds.matrix;
  if (!opts.raw)
    matrix = featsel::apply_minmax(matrix, featsel::fit_minmax(matrix));

  const featsel::SimilarityMatrix sim = featsel::build_similarity_matrix(
      matrix, featsel::measure_from_string(opts.measure), opts.threads);

  ordered_json echo = common_echo("similarity", opts);
  echo["measure"] = opts.measure;

  std::ostringstream body;
  body << config_comment(echo);
  body << "feature";
  for (const auto& name : matrix.feature_names()) body << "," << name;
  body << "\n";
  body.precision(17);
  for (std::size_t i = 0; i < sim.size; ++i) {
    body << matrix.feature_names()[i];
    for (std::size_t j = 0; j < sim.size; ++j) body << "," << sim.at(i, j);
    body << "\n";
  }
  write_text(opts.out, body.str());
  std::cout << "wrote " << opts.out << "\n";
}

// ---------------------------------------------------------------------------

struct SelectOptions : CommonOptions {
  std::string method = "ffr";
  std::size_t count = 10;
  std::string out;
  std::string dump_scores;
  std::string symmetrize = "none";
};

void run_select(const SelectOptions& opts) {
  featsel::LabeledDataset ds = load_dataset(opts);
  if (!ds.categories.empty()) ds = featsel::drop_empty_categories(ds);
  if (!opts.raw)
    ds.matrix = featsel::apply_minmax(ds.matrix, featsel::fit_minmax(ds.matrix));

  featsel::SelectorConfig config;
  config.kind = featsel::selector_from_string(opts.method);
  config.target_count = opts.count;
  config.symmetrize = featsel::symmetrize_from_string(opts.symmetrize);
  config.threads = opts.threads;
  const featsel::SelectionResult result = featsel::run_selector(ds, config);

  ordered_json echo = common_echo("select", opts);
  echo["method"] = opts.method;
  echo["count"] = opts.count;
  echo["symmetrize"] = opts.symmetrize;

  ordered_json j;
  j["config"] = echo;
  j["n_features"] = ds.matrix.cols();
  ordered_json kept = ordered_json::array();
  for (std::size_t i = 0; i < result.kept.size(); ++i) {
    ordered_json entry;
    entry["index"] = result.kept[i];
    entry["name"] = ds.matrix.feature_names()[result.kept[i]];
    entry["score"] = result.scores[i];
    kept.push_back(std::move(entry));
  }
  j["kept"] = kept;
  j["elapsed_seconds"] = result.elapsed_seconds;
  if (!opts.out.empty()) {
    write_text(opts.out, j.dump(2) + "\n");
    std::cout << "wrote " << opts.out << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }

  if (!opts.dump_scores.empty()) {
    if (config.kind != featsel::SelectorKind::FFR)
      throw featsel::ArgumentError("--dump-scores requires --method ffr");
    const featsel::ClassMeanTable table = featsel::class_means(ds);
    const featsel::FfrScores scores = featsel::ffr_scores(table);
    std::ostringstream body;
    body << config_comment(echo);
    body << "feature_index,name";
    for (const auto& category : ds.categories) body << ",mean_" << category;
    body << ",variance\n";
    body.precision(17);
    for (std::size_t f = 0; f < ds.matrix.cols(); ++f) {
      body << f << "," << ds.matrix.feature_names()[f];
      for (std::size_t c = 0; c < table.n_classes; ++c)
        body << "," << table.at(c, f);
      body << "," << scores.scores[f] << "\n";
    }
    write_text(opts.dump_scores, body.str());
    std::cout << "wrote " << opts.dump_scores << "\n";
  }
}

// ---------------------------------------------------------------------------

struct ClassifyOptions : CommonOptions {
  std::string test;
  std::string classifier = "knn";
  std::size_t k = 5;
  double epsilon = 1e-9;
  std::string features;
  std::string out;
};

std::vector<std::size_t> kept_from_selection_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw featsel::IoError("cannot open selection file: " + path);
  ordered_json j;
  in >> j;
  std::vector<std::size_t> kept;
  for (const auto& entry : j.at("kept"))
    kept.push_back(entry.at("index").get<std::size_t>());
  if (kept.empty()) throw featsel::ArgumentError("selection file keeps no features");
  return kept;
}

void run_classify(const ClassifyOptions& opts) {
  const featsel::CategoryMap map = resolve_map(opts);
  const auto train_records = featsel::read_kdd_records(opts.data);
  const auto test_records = opts.test.empty()
                                ? train_records
                                : featsel::read_kdd_records(opts.test);

  // One encoder over both files keeps the codes aligned.
  std::vector<featsel::KddRecord> all_records = train_records;
  all_records.insert(all_records.end(), test_records.begin(),
                     test_records.end());
  const featsel::CategoricalEncoder encoder = featsel::fit_encoder(all_records);

  auto build = [&](const std::vector<featsel::KddRecord>& records) {
    featsel::LabeledDataset ds;
    ds.categories = map.categories();
    for (const auto& record : records) {
      ds.labels.push_back(map.category_of(record.subcategory));
      ds.subcategories.push_back(record.subcategory);
    }
    ds.matrix = featsel::encode_symbolic(records, encoder);
    return ds;
  };
  featsel::LabeledDataset train = build(train_records);
  featsel::LabeledDataset test = build(test_records);

  if (opts.subsample > 0 && opts.subsample < train.size())
    train = featsel::stratified_subsample(train, opts.subsample, opts.seed);

  if (!opts.raw) {
    const featsel::NormalizerParams params = featsel::fit_minmax(train.matrix);
    train.matrix = featsel::apply_minmax(train.matrix, params);
    test.matrix = featsel::apply_minmax(test.matrix, params);
  }

  if (!opts.features.empty()) {
    const std::vector<std::size_t> kept = kept_from_selection_file(opts.features);
    train.matrix = train.matrix.restrict_columns(kept);
    test.matrix = test.matrix.restrict_columns(kept);
  }

  // Fit over the categories actually present in the training labels.
  const featsel::LabeledDataset train_fit = featsel::drop_empty_categories(train);
  std::vector<int> predictions;
  if (featsel::classifier_from_string(opts.classifier) ==
      featsel::ClassifierConfig::Kind::Knn) {
    const featsel::KnnModel model =
        featsel::KnnModel::fit(train_fit.matrix, train_fit.labels, opts.k);
    predictions = model.predict_batch(test.matrix, opts.threads);
  } else {
    const featsel::NaiveBayesModel model = featsel::NaiveBayesModel::fit(
        train_fit.matrix, train_fit.labels, train_fit.categories.size(),
        opts.epsilon);
    predictions = model.predict_batch(test.matrix, opts.threads);
  }

  ordered_json echo = common_echo("classify", opts);
  echo["test"] = opts.test.empty() ? opts.data : opts.test;
  echo["classifier"] = opts.classifier;
  echo["k"] = opts.k;
  echo["epsilon"] = opts.epsilon;
  echo["features"] = opts.features.empty() ? "all" : opts.features;

  std::size_t correct = 0;
  std::ostringstream body;
  body << config_comment(echo);
  body << "sample_index,true_category,predicted_category\n";
  for (std::size_t i = 0; i < test.size(); ++i) {
    const std::string& truth =
        test.categories[static_cast<std::size_t>(test.labels[i])];
    const std::string& predicted =
        train_fit.categories[static_cast<std::size_t>(predictions[i])];
    if (truth == predicted) ++correct;
    body << i << "," << truth << "," << predicted << "\n";
  }
  if (!opts.out.empty()) {
    write_text(opts.out, body.str());
    std::cout << "wrote " << opts.out << "\n";
  } else {
    std::cout << body.str();
  }
  std::cout << "accuracy: "
            << (test.size() == 0
                    ? 0.0
                    : 100.0 * static_cast<double>(correct) /
                          static_cast<double>(test.size()))
            << "%\n";
}

// ---------------------------------------------------------------------------

struct BenchOptions : CommonOptions {
  std::string out;
  std::string counts = "10,20,30";
  std::string selectors = "cc,lsre,mici,ffr";
  std::string classifiers = "knn,bayes";
  std::size_t folds = 10;
  std::size_t knn_k = 5;
  double epsilon = 1e-9;
  bool no_stratify = false;
  bool select_global = false;
  std::string symmetrize = "none";
  std::size_t timing_repeats = 3;
};

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void run_bench(const BenchOptions& opts) {
  featsel::LabeledDataset ds = load_dataset(opts);

  featsel::GridSpec grid;
  grid.counts.clear();
  for (const auto& c : split_list(opts.counts))
    grid.counts.push_back(static_cast<std::size_t>(std::stoul(c)));
  grid.selectors.clear();
  for (const auto& s : split_list(opts.selectors))
    grid.selectors.push_back(featsel::selector_from_string(s));
  grid.classifiers.clear();
  for (const auto& c : split_list(opts.classifiers))
    grid.classifiers.push_back(featsel::classifier_from_string(c));
  grid.n_folds = opts.folds;
  grid.seed = opts.seed;
  grid.stratified = !opts.no_stratify;
  grid.knn_k = opts.knn_k;
  grid.epsilon = opts.epsilon;
  grid.symmetrize = featsel::symmetrize_from_string(opts.symmetrize);

  featsel::EvalOptions eval;
  eval.normalize = !opts.raw;
  eval.select_global = opts.select_global;
  eval.threads = opts.threads;
  eval.timing_repeats = opts.timing_repeats;

  ordered_json echo = common_echo("bench", opts);
  echo["counts"] = opts.counts;
  echo["selectors"] = opts.selectors;
  echo["classifiers"] = opts.classifiers;
  echo["folds"] = opts.folds;
  echo["knn_k"] = opts.knn_k;
  echo["epsilon"] = opts.epsilon;
  echo["stratified"] = !opts.no_stratify;
  echo["select_global"] = opts.select_global;
  echo["symmetrize"] = opts.symmetrize;
  echo["timing_repeats"] = opts.timing_repeats;

  const featsel::EvalReport report =
      featsel::run_grid(ds, grid, eval, std::move(echo));
  write_text(opts.out, featsel::emit_report(report, featsel::ReportFormat::Json));
  std::cout << "wrote " << opts.out << " (" << report.cells.size()
            << " cells, " << report.total_seconds << "s)\n";
}

// ---------------------------------------------------------------------------

struct ReportOptions {
  std::string in;
  std::string format = "markdown";
  std::string out;
  bool strip = false;
};

void run_report(const ReportOptions& opts) {
  std::ifstream in(opts.in);
  if (!in) throw featsel::IoError("cannot open report: " + opts.in);
  ordered_json j;
  in >> j;
  if (opts.strip) featsel::strip_timing(j);

  std::string rendered;
  const featsel::ReportFormat format =
      featsel::report_format_from_string(opts.format);
  if (format == featsel::ReportFormat::Json) {
    rendered = j.dump(2) + "\n";
  } else {
    rendered = featsel::emit_report(featsel::report_from_json(j), format);
  }
  if (!opts.out.empty()) {
    write_text(opts.out, rendered);
    std::cout << "wrote " << opts.out << "\n";
  } else {
    std::cout << rendered;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feature reduction toolkit and benchmark for KDD-99-format data"};
  app.require_subcommand(1);

  IngestOptions ingest_opts;
  auto* ingest = app.add_subcommand(
      "ingest", "parse, encode and summarize a KDD CSV; optionally dump the matrix");
  add_common(ingest, ingest_opts);
  ingest->add_option("--out", ingest_opts.out, "CSV dump of the encoded matrix");

  SimilarityOptions similarity_opts;
  auto* similarity = app.add_subcommand(
      "similarity", "emit the DxD feature dissimilarity matrix");
  add_common(similarity, similarity_opts);
  similarity->add_option("--measure", similarity_opts.measure, "cc|lsre|mici")
      ->required();
  similarity->add_option("--out", similarity_opts.out, "output CSV")->required();

  SelectOptions select_opts;
  auto* select = app.add_subcommand("select", "run a feature selector");
  add_common(select, select_opts);
  select->add_option("--method", select_opts.method, "cc|lsre|mici|ffr")
      ->required();
  select->add_option("--count", select_opts.count, "number of features to keep")
      ->required();
  select->add_option("--out", select_opts.out, "selection JSON output");
  select->add_option("--dump-scores", select_opts.dump_scores,
                     "per-feature class means and variance CSV (ffr only)");
  select->add_option("--symmetrize", select_opts.symmetrize,
                     "none|min|max (lsre clustering only)");

  ClassifyOptions classify_opts;
  auto* classify = app.add_subcommand(
      "classify", "fit on --data, predict --test (defaults to --data)");
  add_common(classify, classify_opts);
  classify->add_option("--test", classify_opts.test, "test KDD CSV");
  classify->add_option("--classifier", classify_opts.classifier, "knn|bayes");
  classify->add_option("--k", classify_opts.k, "neighbor count for knn");
  classify->add_option("--epsilon", classify_opts.epsilon,
                       "variance floor for bayes");
  classify->add_option("--features", classify_opts.features,
                       "selection JSON restricting the feature set");
  classify->add_option("--out", classify_opts.out, "predictions CSV");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand(
      "bench", "cross-validated selector x count x classifier grid");
  add_common(bench, bench_opts);
  bench->add_option("--out", bench_opts.out, "report JSON output")->required();
  bench->add_option("--counts", bench_opts.counts, "comma list of feature counts");
  bench->add_option("--selectors", bench_opts.selectors, "comma list of selectors");
  bench->add_option("--classifiers", bench_opts.classifiers,
                    "comma list of classifiers");
  bench->add_option("--folds", bench_opts.folds, "cross-validation folds");
  bench->add_option("--knn-k", bench_opts.knn_k, "neighbor count for knn");
  bench->add_option("--epsilon", bench_opts.epsilon, "variance floor for bayes");
  bench->add_flag("--no-stratify", bench_opts.no_stratify,
                  "plain round-robin folds instead of stratified");
  bench->add_flag("--select-global", bench_opts.select_global,
                  "select once on the whole dataset instead of per fold");
  bench->add_option("--symmetrize", bench_opts.symmetrize, "none|min|max");
  bench->add_option("--timing-repeats", bench_opts.timing_repeats,
                    "repeats for selection timing (min is reported)");

  ReportOptions report_opts;
  auto* report = app.add_subcommand("report", "re-render a bench report");
  report->add_option("--in", report_opts.in, "report JSON input")->required();
  report->add_option("--format", report_opts.format, "json|csv|markdown");
  report->add_option("--out", report_opts.out, "output path (default stdout)");
  report->add_flag("--strip-timing", report_opts.strip,
                   "remove timing fields before rendering");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(ingest)) run_ingest(ingest_opts);
    if (app.got_subcommand(similarity)) run_similarity(similarity_opts);
    if (app.got_subcommand(select)) run_select(select_opts);
    if (app.got_subcommand(classify)) run_classify(classify_opts);
    if (app.got_subcommand(bench)) run_bench(bench_opts);
    if (app.got_subcommand(report)) run_report(report_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
