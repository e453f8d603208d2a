#pragma once

#include <cstddef>
#include <vector>

#include "featsel/selection.hpp"
#include "featsel/similarity.hpp"
#include "featsel/types.hpp"

namespace featsel {

struct ClusterSelectionParams {
  Measure measure = Measure::MICI;
  std::size_t target_count = 0;
  Symmetrize symmetrize = Symmetrize::None;
  unsigned threads = 1;
};

// Outcome of one greedy partition pass at a fixed neighbor count k.
// Retained features carry the k-NN radius that made them representatives;
// discarded features carry their representative and the distance to it.
struct ClusterDecision {
  enum class Kind { Kept, Discarded };
  Kind kind = Kind::Discarded;
  std::size_t representative = 0;  // self for kept features
  double distance = 0.0;           // 0 for kept; dissimilarity to rep otherwise
  double radius = 0.0;             // representative's k-NN distance at decision
};

struct ClusteringRun {
  std::vector<std::size_t> kept;    // in retention order
  std::vector<double> kept_radius;  // k-NN distance when retained
  std::vector<ClusterDecision> decisions;  // one per feature
};

// One pass of the representative partition: repeatedly retain the feature
// whose k-th nearest remaining neighbor is closest, discard those k
// neighbors, and shrink k when fewer than k+1 features remain. Produces
// ceil(D / (k+1)) representatives.
ClusteringRun run_knn_partition(const SimilarityMatrix& matrix, std::size_t k);

// Applies the requested symmetrization to an LSRE matrix (no-op otherwise).
SimilarityMatrix symmetrized(SimilarityMatrix matrix, Symmetrize mode);

// Full baseline selector: build the dissimilarity matrix, then search k by
// bisection so the number of representatives matches target_count; trims the
// least representative features when no k lands exactly, and pads back the
// most poorly represented discarded features for targets above the k=1 yield.
SelectionResult select_by_clustering(const FeatureMatrix& matrix,
                                     const ClusterSelectionParams& params);

}  // namespace featsel
