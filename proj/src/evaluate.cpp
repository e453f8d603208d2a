#include "featsel/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "featsel/classify.hpp"
#include "featsel/parallel.hpp"

namespace featsel {

ClassifierConfig::Kind classifier_from_string(const std::string& name) {
  if (name == "knn") return ClassifierConfig::Kind::Knn;
  if (name == "bayes") return ClassifierConfig::Kind::Bayes;
  throw ArgumentError("unknown classifier '" + name + "' (expected knn|bayes)");
}

const char* to_string(ClassifierConfig::Kind kind) {
  return kind == ClassifierConfig::Kind::Knn ? "knn" : "bayes";
}

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown") return ReportFormat::Markdown;
  throw ArgumentError("unknown format '" + name +
                      "' (expected json|csv|markdown)");
}

namespace {

LabeledDataset restrict_features(const LabeledDataset& ds,
                                 std::span<const std::size_t> kept) {
  LabeledDataset out;
  out.matrix = ds.matrix.restrict_columns(kept);
  out.labels = ds.labels;
  out.categories = ds.categories;
  out.subcategories = ds.subcategories;
  return out;
}

std::vector<int> fit_predict(const FeatureMatrix& train,
                             const std::vector<int>& train_labels,
                             const FeatureMatrix& test,
                             std::size_t n_classes,
                             const ClassifierConfig& config, unsigned threads) {
  if (config.kind == ClassifierConfig::Kind::Knn) {
    const KnnModel model = KnnModel::fit(train, train_labels, config.knn_k);
    return model.predict_batch(test, threads);
  }
  const NaiveBayesModel model =
      NaiveBayesModel::fit(train, train_labels, n_classes, config.epsilon);
  return model.predict_batch(test, threads);
}

}  // namespace

EvalCell run_cv(const LabeledDataset& ds, const SelectorConfig& selector,
                const ClassifierConfig& classifier, const FoldPlan& folds,
                const EvalOptions& options) {
  const std::size_t n = ds.size();
  if (folds.assignments.size() != n)
    throw DimensionError("fold plan was computed for a different dataset");
  const std::size_t k_categories = ds.categories.size();

  EvalCell cell;
  cell.selector = to_string(selector.kind);
  cell.feature_count = selector.kind == SelectorKind::All
                           ? ds.matrix.cols()
                           : selector.target_count;
  cell.classifier = to_string(classifier.kind);

  // Optional global variant: one selection over the whole dataset.
  std::vector<std::size_t> global_kept;
  if (options.select_global && selector.kind != SelectorKind::All) {
    LabeledDataset whole = ds;
    if (options.normalize)
      whole.matrix = apply_minmax(ds.matrix, fit_minmax(ds.matrix));
    SelectorConfig cfg = selector;
    cfg.threads = options.threads;
    global_kept = run_selector(whole, cfg).kept;
  }

  std::vector<std::vector<int>> fold_predictions(folds.n_folds);
  std::vector<std::vector<std::size_t>> fold_test_indices(folds.n_folds);
  std::vector<std::string> fold_errors(folds.n_folds);

  const unsigned fold_threads =
      std::min<unsigned>(options.threads, static_cast<unsigned>(folds.n_folds));
  const unsigned inner_threads =
      fold_threads > 1 ? 1 : std::max(1u, options.threads);

  parallel_for(folds.n_folds, fold_threads, [&](std::size_t f) {
    try {
      const std::vector<std::size_t> train_idx = folds.train_indices(f);
      const std::vector<std::size_t> test_idx = folds.test_indices(f);
      fold_test_indices[f] = test_idx;
      if (test_idx.empty()) return;

      LabeledDataset train = select_rows(ds, train_idx);
      LabeledDataset test = select_rows(ds, test_idx);

      // Every category present in the dataset must be trainable.
      std::vector<bool> seen(k_categories, false);
      for (int l : train.labels) seen[static_cast<std::size_t>(l)] = true;
      const auto totals = ds.category_counts();
      for (std::size_t c = 0; c < k_categories; ++c) {
        if (totals[c] > 0 && !seen[c])
          throw DegenerateClassError("fold " + std::to_string(f) + ": class '" +
                                     ds.categories[c] +
                                     "' has no training samples");
      }

      if (options.normalize) {
        const NormalizerParams params = fit_minmax(train.matrix);
        train.matrix = apply_minmax(train.matrix, params);
        test.matrix = apply_minmax(test.matrix, params);
      }

      std::vector<std::size_t> kept;
      if (selector.kind == SelectorKind::All) {
        kept.resize(train.matrix.cols());
        std::iota(kept.begin(), kept.end(), 0);
      } else if (options.select_global) {
        kept = global_kept;
      } else {
        SelectorConfig cfg = selector;
        cfg.threads = inner_threads;
        kept = run_selector(train, cfg).kept;
      }

      const LabeledDataset train_kept = restrict_features(train, kept);
      const LabeledDataset test_kept = restrict_features(test, kept);
      fold_predictions[f] =
          fit_predict(train_kept.matrix, train_kept.labels, test_kept.matrix,
                      k_categories, classifier, inner_threads);
    } catch (const std::exception& e) {
      fold_errors[f] = e.what();
    }
  });

  for (const std::string& err : fold_errors)
    if (!err.empty()) throw Error(err);

  cell.category_correct.assign(k_categories, 0);
  cell.category_total.assign(k_categories, 0);
  std::size_t correct = 0;
  std::size_t total = 0;
  for (std::size_t f = 0; f < folds.n_folds; ++f) {
    const auto& idx = fold_test_indices[f];
    const auto& pred = fold_predictions[f];
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const std::size_t truth = static_cast<std::size_t>(ds.labels[idx[i]]);
      ++cell.category_total[truth];
      ++total;
      if (pred[i] == ds.labels[idx[i]]) {
        ++cell.category_correct[truth];
        ++correct;
      }
    }
  }
  cell.per_category_recall.assign(k_categories, 0.0);
  for (std::size_t c = 0; c < k_categories; ++c) {
    if (cell.category_total[c] > 0)
      cell.per_category_recall[c] =
          static_cast<double>(cell.category_correct[c]) /
          static_cast<double>(cell.category_total[c]);
  }
  cell.overall_accuracy =
      total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  return cell;
}

EvalReport run_grid(const LabeledDataset& input, const GridSpec& grid,
                    const EvalOptions& options,
                    nlohmann::ordered_json config_echo) {
  const auto started = std::chrono::steady_clock::now();
  const LabeledDataset ds = drop_empty_categories(input);

  EvalReport report;
  report.categories = ds.categories;
  report.n_samples = ds.size();
  report.n_features = ds.matrix.cols();
  report.category_counts = ds.category_counts();
  report.seed = grid.seed;
  report.threads = options.threads;
  report.config_echo = std::move(config_echo);

  const FoldPlan folds =
      grid.stratified
          ? stratified_folds(ds.labels, grid.n_folds, grid.seed)
          : round_robin_folds(ds.size(), grid.n_folds, grid.seed);

  // Selection timing runs on the full normalized dataset, mirroring a
  // standalone selection pass; the CV loop keeps its own per-fold selection.
  LabeledDataset whole = ds;
  if (options.normalize)
    whole.matrix = apply_minmax(ds.matrix, fit_minmax(ds.matrix));

  struct CellSpec {
    SelectorConfig selector;
    ClassifierConfig classifier;
  };
  std::vector<CellSpec> specs;
  for (const auto classifier_kind : grid.classifiers) {
    ClassifierConfig classifier;
    classifier.kind = classifier_kind;
    classifier.knn_k = grid.knn_k;
    classifier.epsilon = grid.epsilon;

    SelectorConfig all;
    all.kind = SelectorKind::All;
    all.symmetrize = grid.symmetrize;
    specs.push_back({all, classifier});
    for (const auto selector_kind : grid.selectors) {
      for (const std::size_t count : grid.counts) {
        SelectorConfig selector;
        selector.kind = selector_kind;
        selector.target_count = count;
        selector.symmetrize = grid.symmetrize;
        specs.push_back({selector, classifier});
      }
    }
  }

  std::vector<double> selection_time_cache(5 * (ds.matrix.cols() + 1), -1.0);
  auto cached_selection_time = [&](const SelectorConfig& cfg) -> double {
    if (cfg.kind == SelectorKind::All) return 0.0;
    const std::size_t slot =
        static_cast<std::size_t>(cfg.kind) * (ds.matrix.cols() + 1) +
        cfg.target_count;
    if (selection_time_cache[slot] < 0.0) {
      SelectorConfig timed = cfg;
      timed.threads = options.threads;
      selection_time_cache[slot] =
          time_selection(whole, timed, options.timing_repeats);
    }
    return selection_time_cache[slot];
  };

  for (const CellSpec& spec : specs) {
    EvalCell cell;
    try {
      cell = run_cv(ds, spec.selector, spec.classifier, folds, options);
      cell.selection_seconds = cached_selection_time(spec.selector);
    } catch (const std::exception& e) {
      cell.selector = to_string(spec.selector.kind);
      cell.feature_count = spec.selector.kind == SelectorKind::All
                               ? ds.matrix.cols()
                               : spec.selector.target_count;
      cell.classifier = to_string(spec.classifier.kind);
      cell.error = e.what();
    }
    report.cells.push_back(std::move(cell));
  }

  report.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["config"] = report.config_echo.is_null() ? nlohmann::ordered_json::object()
                                             : report.config_echo;
  nlohmann::ordered_json fingerprint;
  fingerprint["n_samples"] = report.n_samples;
  fingerprint["n_features"] = report.n_features;
  nlohmann::ordered_json counts;
  for (std::size_t c = 0; c < report.categories.size(); ++c)
    counts[report.categories[c]] = report.category_counts[c];
  fingerprint["category_counts"] = counts;
  fingerprint["seed"] = report.seed;
  j["fingerprint"] = fingerprint;
  j["categories"] = report.categories;

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const EvalCell& cell : report.cells) {
    nlohmann::ordered_json c;
    c["classifier"] = cell.classifier;
    c["selector"] = cell.selector;
    c["feature_count"] = cell.feature_count;
    if (!cell.error.empty()) {
      c["error"] = cell.error;
    } else {
      nlohmann::ordered_json recall;
      for (std::size_t i = 0; i < report.categories.size(); ++i)
        recall[report.categories[i]] = cell.per_category_recall[i];
      c["per_category_recall"] = recall;
      nlohmann::ordered_json correct;
      for (std::size_t i = 0; i < report.categories.size(); ++i)
        correct[report.categories[i]] = cell.category_correct[i];
      c["category_correct"] = correct;
      c["overall_accuracy"] = cell.overall_accuracy;
      c["selection_seconds"] = cell.selection_seconds;
    }
    cells.push_back(std::move(c));
  }
  j["cells"] = cells;

  nlohmann::ordered_json execution;
  execution["threads"] = report.threads;
  execution["total_seconds"] = report.total_seconds;
  j["execution"] = execution;
  return j;
}

EvalReport report_from_json(const nlohmann::ordered_json& j) {
  EvalReport report;
  report.config_echo = j.value("config", nlohmann::ordered_json::object());
  report.categories = j.at("categories").get<std::vector<std::string>>();
  const auto& fingerprint = j.at("fingerprint");
  report.n_samples = fingerprint.at("n_samples").get<std::size_t>();
  report.n_features = fingerprint.at("n_features").get<std::size_t>();
  report.seed = fingerprint.at("seed").get<std::uint64_t>();
  report.category_counts.clear();
  for (const auto& name : report.categories)
    report.category_counts.push_back(
        fingerprint.at("category_counts").at(name).get<std::size_t>());
  if (j.contains("execution")) {
    report.threads = j.at("execution").value("threads", 1u);
    report.total_seconds = j.at("execution").value("total_seconds", 0.0);
  }
  for (const auto& c : j.at("cells")) {
    EvalCell cell;
    cell.classifier = c.at("classifier").get<std::string>();
    cell.selector = c.at("selector").get<std::string>();
    cell.feature_count = c.at("feature_count").get<std::size_t>();
    if (c.contains("error")) {
      cell.error = c.at("error").get<std::string>();
    } else {
      for (const auto& name : report.categories) {
        cell.per_category_recall.push_back(
            c.at("per_category_recall").at(name).get<double>());
        cell.category_correct.push_back(
            c.at("category_correct").at(name).get<std::size_t>());
      }
      cell.overall_accuracy = c.at("overall_accuracy").get<double>();
      cell.selection_seconds = c.value("selection_seconds", 0.0);
      // Totals follow from the fingerprint: folds partition the dataset.
      cell.category_total = report.category_counts;
    }
    report.cells.push_back(std::move(cell));
  }
  return report;
}

namespace {

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

std::string display_category(const std::string& name) {
  if (name == "normal") return "Normal";
  if (name == "dos") return "DoS";
  if (name == "probe") return "Prob";
  if (name == "r2l") return "R2L";
  if (name == "u2r") return "U2R";
  return name;
}

const EvalCell* find_cell(const EvalReport& report,
                          const std::string& classifier,
                          const std::string& selector,
                          std::size_t feature_count) {
  for (const EvalCell& cell : report.cells)
    if (cell.classifier == classifier && cell.selector == selector &&
        cell.feature_count == feature_count)
      return &cell;
  return nullptr;
}

std::string emit_markdown(const EvalReport& report) {
  std::ostringstream out;
  out << "# Benchmark report\n\n";
  out << "samples: " << report.n_samples << ", features: " << report.n_features
      << ", seed: " << report.seed << "\n";

  // Column layout: the no-selection baseline, then selector/count pairs.
  std::vector<std::string> classifiers;
  std::vector<std::pair<std::string, std::size_t>> columns;
  for (const EvalCell& cell : report.cells) {
    if (std::find(classifiers.begin(), classifiers.end(), cell.classifier) ==
        classifiers.end())
      classifiers.push_back(cell.classifier);
    const std::pair<std::string, std::size_t> col{cell.selector,
                                                  cell.feature_count};
    if (std::find(columns.begin(), columns.end(), col) == columns.end())
      columns.push_back(col);
  }

  for (const std::string& classifier : classifiers) {
    out << "\n## " << classifier << " accuracy (%)\n\n";
    out << "| Attack Type |";
    for (const auto& [selector, count] : columns) {
      if (selector == "all")
        out << " All |";
      else
        out << " " << selector << "/" << count << " |";
    }
    out << "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
    out << "\n";
    for (std::size_t c = 0; c < report.categories.size(); ++c) {
      out << "| " << display_category(report.categories[c]) << " |";
      for (const auto& [selector, count] : columns) {
        const EvalCell* cell = find_cell(report, classifier, selector, count);
        if (cell == nullptr || !cell->error.empty())
          out << " n/a |";
        else
          out << " " << format_percent(cell->per_category_recall[c]) << " |";
      }
      out << "\n";
    }
    out << "| Over all |";
    for (const auto& [selector, count] : columns) {
      const EvalCell* cell = find_cell(report, classifier, selector, count);
      if (cell == nullptr || !cell->error.empty())
        out << " n/a |";
      else
        out << " " << format_percent(cell->overall_accuracy) << " |";
    }
    out << "\n";
  }

  // Selection timing in the Table III shape: selector rows, count columns.
  std::vector<std::string> selectors;
  std::vector<std::size_t> counts;
  for (const auto& [selector, count] : columns) {
    if (selector == "all") continue;
    if (std::find(selectors.begin(), selectors.end(), selector) ==
        selectors.end())
      selectors.push_back(selector);
    if (std::find(counts.begin(), counts.end(), count) == counts.end())
      counts.push_back(count);
  }
  if (!selectors.empty() && !classifiers.empty()) {
    out << "\n## selection time (seconds)\n\n| Selector |";
    for (std::size_t count : counts) out << " " << count << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < counts.size(); ++i) out << "---|";
    out << "\n";
    for (const std::string& selector : selectors) {
      out << "| " << selector << " |";
      for (std::size_t count : counts) {
        const EvalCell* cell =
            find_cell(report, classifiers.front(), selector, count);
        if (cell == nullptr || !cell->error.empty()) {
          out << " n/a |";
        } else {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.6f", cell->selection_seconds);
          out << " " << buf << " |";
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string emit_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "classifier,selector,feature_count,metric,value\n";
  for (const EvalCell& cell : report.cells) {
    const std::string prefix = cell.classifier + "," + cell.selector + "," +
                               std::to_string(cell.feature_count) + ",";
    if (!cell.error.empty()) {
      std::string quoted = cell.error;
      for (std::size_t pos = 0; (pos = quoted.find('"', pos)) != std::string::npos;
           pos += 2)
        quoted.insert(pos, 1, '"');
      out << prefix << "error,\"" << quoted << "\"\n";
      continue;
    }
    for (std::size_t c = 0; c < report.categories.size(); ++c)
      out << prefix << "recall_" << report.categories[c] << ","
          << format_percent(cell.per_category_recall[c]) << "\n";
    out << prefix << "overall_accuracy,"
        << format_percent(cell.overall_accuracy) << "\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", cell.selection_seconds);
    out << prefix << "selection_seconds," << buf << "\n";
  }
  return out.str();
}

}  // namespace

std::string emit_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return report_to_json(report).dump(2) + "\n";
    case ReportFormat::Csv:
      return emit_csv(report);
    case ReportFormat::Markdown:
      return emit_markdown(report);
  }
  throw ArgumentError("invalid report format");
}

void strip_timing(nlohmann::ordered_json& j) {
  if (j.is_object()) {
    j.erase("execution");
    for (auto it = j.begin(); it != j.end();) {
      const std::string& key = it.key();
      if (key.ends_with("_seconds")) {
        it = j.erase(it);
        continue;
      }
      strip_timing(it.value());
      ++it;
    }
  } else if (j.is_array()) {
    for (auto& item : j) strip_timing(item);
  }
}

}  // namespace featsel
