#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "featsel/types.hpp"

namespace featsel {

enum class SelectorKind { All, CC, LSRE, MICI, FFR };
enum class Symmetrize { None, Min, Max };

SelectorKind selector_from_string(const std::string& name);
const char* to_string(SelectorKind kind);
Symmetrize symmetrize_from_string(const std::string& name);
const char* to_string(Symmetrize s);

struct SelectorConfig {
  SelectorKind kind = SelectorKind::FFR;
  std::size_t target_count = 0;  // ignored for All
  Symmetrize symmetrize = Symmetrize::None;
  unsigned threads = 1;
};

struct SelectionResult {
  std::vector<std::size_t> kept;  // unique feature indices
  std::vector<double> scores;     // one per kept feature
  double elapsed_seconds = 0.0;
  std::string selector;
};

// Runs the configured selector on an already-prepared (normalized or raw)
// dataset. Clustering selectors use only the matrix; FFR also needs labels.
SelectionResult run_selector(const LabeledDataset& ds,
                             const SelectorConfig& config);

// Minimum wall-clock over `repeats` full selection runs (similarity-matrix
// build included, ingestion and normalization excluded).
double time_selection(const LabeledDataset& ds, const SelectorConfig& config,
                      std::size_t repeats);

}  // namespace featsel
