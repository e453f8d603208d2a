#include "featsel/selection.hpp"

#include <chrono>
#include <limits>
#include <numeric>

#include "featsel/clustering.hpp"
#include "featsel/ffr.hpp"

namespace featsel {

SelectorKind selector_from_string(const std::string& name) {
  if (name == "all") return SelectorKind::All;
  if (name == "cc") return SelectorKind::CC;
  if (name == "lsre") return SelectorKind::LSRE;
  if (name == "mici") return SelectorKind::MICI;
  if (name == "ffr") return SelectorKind::FFR;
  throw ArgumentError("unknown selector '" + name +
                      "' (expected cc|lsre|mici|ffr|all)");
}

const char* to_string(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::All: return "all";
    case SelectorKind::CC: return "cc";
    case SelectorKind::LSRE: return "lsre";
    case SelectorKind::MICI: return "mici";
    case SelectorKind::FFR: return "ffr";
  }
  return "?";
}

Symmetrize symmetrize_from_string(const std::string& name) {
  if (name == "none") return Symmetrize::None;
  if (name == "min") return Symmetrize::Min;
  if (name == "max") return Symmetrize::Max;
  throw ArgumentError("unknown symmetrize mode '" + name +
                      "' (expected none|min|max)");
}

const char* to_string(Symmetrize s) {
  switch (s) {
    case Symmetrize::None: return "none";
    case Symmetrize::Min: return "min";
    case Symmetrize::Max: return "max";
  }
  return "?";
}

SelectionResult run_selector(const LabeledDataset& ds,
                             const SelectorConfig& config) {
  switch (config.kind) {
    case SelectorKind::All: {
      SelectionResult result;
      result.selector = "all";
      result.kept.resize(ds.matrix.cols());
      std::iota(result.kept.begin(), result.kept.end(), 0);
      result.scores.assign(ds.matrix.cols(), 0.0);
      return result;
    }
    case SelectorKind::FFR:
      // Input is expected to be prepared (normalized or deliberately raw).
      return ffr_select(ds, config.target_count, /*normalize=*/false);
    case SelectorKind::CC:
    case SelectorKind::LSRE:
    case SelectorKind::MICI: {
      ClusterSelectionParams params;
      params.measure = config.kind == SelectorKind::CC    ? Measure::CC
                       : config.kind == SelectorKind::LSRE ? Measure::LSRE
                                                            : Measure::MICI;
      params.target_count = config.target_count;
      params.symmetrize = config.symmetrize;
      params.threads = config.threads;
      const auto start = std::chrono::steady_clock::now();
      SelectionResult result = select_by_clustering(ds.matrix, params);
      const auto stop = std::chrono::steady_clock::now();
      result.elapsed_seconds =
          std::chrono::duration<double>(stop - start).count();
      return result;
    }
  }
  throw ArgumentError("invalid selector");
}

double time_selection(const LabeledDataset& ds, const SelectorConfig& config,
                      std::size_t repeats) {
  if (repeats < 1) throw ArgumentError("repeats must be at least 1");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < repeats; ++i) {
    const SelectionResult result = run_selector(ds, config);
    best = std::min(best, result.elapsed_seconds);
  }
  return best;
}

}  // namespace featsel
