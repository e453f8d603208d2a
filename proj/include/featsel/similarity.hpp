#pragma once

#include <span>
#include <string>
#include <vector>

#include "featsel/types.hpp"

namespace featsel {

enum class Measure { CC, LSRE, MICI };

Measure measure_from_string(const std::string& name);
const char* to_string(Measure m);

// Population moments (divide by n) throughout.
struct ColumnMoments {
  double mean = 0.0;
  double variance = 0.0;
};

ColumnMoments column_moments(std::span<const double> column);
double paired_covariance(std::span<const double> x, std::span<const double> y,
                         double mean_x, double mean_y);

// Moment-level forms. The pairwise entry points and the matrix builder both
// go through these, so cached-moment and direct evaluation agree bit for bit.
double cc_from_moments(double var_x, double var_y, double cov);
double lsre_from_moments(double var_x, double var_y, double cov);
double mici_from_moments(double var_x, double var_y, double cov);

// 1 - |cov / sqrt(var_x * var_y)| in [0,1]; 1 when either variance is zero.
double correlation_dissimilarity(std::span<const double> x,
                                 std::span<const double> y);

// Mean squared error of the best line predicting y from x; var(y) when
// var(x) is zero. Not symmetric.
double lsre(std::span<const double> x, std::span<const double> y);

// Smaller eigenvalue of the 2x2 covariance of (x, y).
double mici(std::span<const double> x, std::span<const double> y);

// D x D dissimilarity table; row i holds distances from feature i.
struct SimilarityMatrix {
  Measure measure = Measure::CC;
  std::size_t size = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * size + j]; }
};

// CC/MICI are computed for i<j and mirrored; LSRE fills all ordered pairs.
// The diagonal is 0 for every measure. Cells are independent, so parallel
// builds are bit-identical to sequential ones.
SimilarityMatrix build_similarity_matrix(const FeatureMatrix& matrix,
                                         Measure measure, unsigned threads = 1);

}  // namespace featsel
