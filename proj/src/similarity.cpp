#include "featsel/similarity.hpp"

#include <cmath>

#include "featsel/parallel.hpp"

namespace featsel {

Measure measure_from_string(const std::string& name) {
  if (name == "cc") return Measure::CC;
  if (name == "lsre") return Measure::LSRE;
  if (name == "mici") return Measure::MICI;
  throw ArgumentError("unknown measure '" + name + "' (expected cc|lsre|mici)");
}

const char* to_string(Measure m) {
  switch (m) {
    case Measure::CC: return "cc";
    case Measure::LSRE: return "lsre";
    case Measure::MICI: return "mici";
  }
  return "?";
}

ColumnMoments column_moments(std::span<const double> column) {
  const std::size_t n = column.size();
  ColumnMoments m;
  if (n == 0) return m;
  double sum = 0.0;
  for (double v : column) sum += v;
  m.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : column) {
    const double d = v - m.mean;
    ss += d * d;
  }
  m.variance = ss / static_cast<double>(n);
  return m;
}

double paired_covariance(std::span<const double> x, std::span<const double> y,
                         double mean_x, double mean_y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += (x[i] - mean_x) * (y[i] - mean_y);
  return acc / static_cast<double>(x.size());
}

double cc_from_moments(double var_x, double var_y, double cov) {
  if (var_x == 0.0 || var_y == 0.0) return 1.0;
  const double r = std::abs(cov) / std::sqrt(var_x * var_y);
  const double d = 1.0 - r;
  if (d < 0.0) return 0.0;
  if (d > 1.0) return 1.0;
  return d;
}

double lsre_from_moments(double var_x, double var_y, double cov) {
  // var(y) * (1 - Relation^2) == var(y) - cov^2 / var(x); the second form
  // also covers var(y) == 0. A zero-variance predictor leaves the full
  // variance of y as error.
  if (var_x == 0.0) return var_y;
  const double e = var_y - cov * cov / var_x;
  return e < 0.0 ? 0.0 : e;
}

double mici_from_moments(double var_x, double var_y, double cov) {
  const double trace = var_x + var_y;
  const double diff = var_x - var_y;
  const double disc = std::sqrt(diff * diff + 4.0 * cov * cov);
  const double lambda2 = 0.5 * (trace - disc);
  return lambda2 < 0.0 ? 0.0 : lambda2;
}

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw DimensionError("column lengths differ: " + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()));
  if (x.size() < 2) throw ArgumentError("columns must have at least 2 values");
}

}  // namespace

double correlation_dissimilarity(std::span<const double> x,
                                 std::span<const double> y) {
  check_pair(x, y);
  const ColumnMoments mx = column_moments(x);
  const ColumnMoments my = column_moments(y);
  const double cov = paired_covariance(x, y, mx.mean, my.mean);
  return cc_from_moments(mx.variance, my.variance, cov);
}

double lsre(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const ColumnMoments mx = column_moments(x);
  const ColumnMoments my = column_moments(y);
  const double cov = paired_covariance(x, y, mx.mean, my.mean);
  return lsre_from_moments(mx.variance, my.variance, cov);
}

double mici(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const ColumnMoments mx = column_moments(x);
  const ColumnMoments my = column_moments(y);
  const double cov = paired_covariance(x, y, mx.mean, my.mean);
  return mici_from_moments(mx.variance, my.variance, cov);
}

SimilarityMatrix build_similarity_matrix(const FeatureMatrix& matrix,
                                         Measure measure, unsigned threads) {
  const std::size_t d = matrix.cols();
  if (d < 2) throw ArgumentError("similarity matrix needs at least 2 features");
  if (matrix.rows() < 2)
    throw ArgumentError("columns must have at least 2 values");

  std::vector<std::vector<double>> columns(d);
  std::vector<ColumnMoments> moments(d);
  parallel_for(d, threads, [&](std::size_t c) {
    columns[c] = matrix.column(c);
    moments[c] = column_moments(columns[c]);
  });

  SimilarityMatrix out;
  out.measure = measure;
  out.size = d;
  out.values.assign(d * d, 0.0);

  // One covariance per unordered pair; LSRE derives both ordered cells from it.
  parallel_for(d, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double cov = paired_covariance(columns[i], columns[j],
                                           moments[i].mean, moments[j].mean);
      switch (measure) {
        case Measure::CC: {
          const double v =
              cc_from_moments(moments[i].variance, moments[j].variance, cov);
          out.at(i, j) = v;
          out.at(j, i) = v;
          break;
        }
        case Measure::MICI: {
          const double v =
              mici_from_moments(moments[i].variance, moments[j].variance, cov);
          out.at(i, j) = v;
          out.at(j, i) = v;
          break;
        }
        case Measure::LSRE: {
          out.at(i, j) =
              lsre_from_moments(moments[i].variance, moments[j].variance, cov);
          out.at(j, i) =
              lsre_from_moments(moments[j].variance, moments[i].variance, cov);
          break;
        }
      }
    }
  });
  return out;
}

}  // namespace featsel
