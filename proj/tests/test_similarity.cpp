#include <doctest.h>

#include <cmath>

#include "featsel/similarity.hpp"
#include "test_util.hpp"

using namespace featsel;

namespace {

// Independent 2x2 symmetric eigensolver: cyclic Jacobi rotations until the
// off-diagonal entry vanishes. Never touches the closed form used by mici().
double jacobi_min_eigenvalue(double a, double b, double c) {
  // matrix [[a, b], [b, c]]
  for (int iter = 0; iter < 64 && std::abs(b) > 1e-300; ++iter) {
    const double theta = 0.5 * std::atan2(2.0 * b, a - c);
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    const double a2 = cs * cs * a + 2.0 * cs * sn * b + sn * sn * c;
    const double c2 = sn * sn * a - 2.0 * cs * sn * b + cs * cs * c;
    const double b2 = (c - a) * cs * sn + b * (cs * cs - sn * sn);
    a = a2;
    b = b2;
    c = c2;
  }
  return std::min(a, c);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double pop_var(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

double pop_cov(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / static_cast<double>(x.size());
}

// Explicit least-squares oracle: fit y = a + b*x, then average the squared
// residuals directly.
double regression_residual_oracle(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  const double var_x = pop_var(x);
  if (var_x == 0.0) {
    const double my = mean_of(y);
    double s = 0.0;
    for (double v : y) s += (v - my) * (v - my);
    return s / static_cast<double>(y.size());
  }
  const double b = pop_cov(x, y) / var_x;
  const double a = mean_of(y) - b * mean_of(x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - a - b * x[i];
    s += r * r;
  }
  return s / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("correlation dissimilarity on pinned examples") {
  CHECK(correlation_dissimilarity(std::vector{1.0, 2.0, 3.0},
                                  std::vector{2.0, 4.0, 6.0}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(correlation_dissimilarity(std::vector{1.0, 2.0, 3.0},
                                  std::vector{3.0, 2.0, 1.0}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(correlation_dissimilarity(std::vector{1.0, 2.0, 3.0, 4.0},
                                  std::vector{1.0, 3.0, 2.0, 4.0}) ==
        doctest::Approx(0.2));
  // Zero-variance column carries no linear information.
  CHECK(correlation_dissimilarity(std::vector{5.0, 5.0, 5.0},
                                  std::vector{1.0, 2.0, 3.0}) == 1.0);
  CHECK_THROWS_AS(
      correlation_dissimilarity(std::vector{1.0, 2.0}, std::vector{1.0}),
      DimensionError);
}

TEST_CASE("lsre on pinned examples") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  std::vector<double> y(4);
  for (std::size_t i = 0; i < 4; ++i) y[i] = 3.0 * x[i] + 1.0;
  CHECK(lsre(x, y) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lsre(x, std::vector{1.0, 3.0, 2.0, 4.0}) == doctest::Approx(0.45));
  CHECK(lsre(std::vector{5.0, 5.0, 5.0}, std::vector{1.0, 2.0, 3.0}) ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("mici on pinned examples") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(mici(x, x) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mici(x, std::vector{1.0, 3.0, 2.0, 4.0}) == doctest::Approx(0.25));
  // Diagonal covariance: min eigenvalue is the smaller variance.
  CHECK(mici_from_moments(1.0, 4.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("measures match brute-force oracles on random pairs") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + testutil::uindex(rng, 60);
    const auto x = testutil::random_column(rng, n);
    const auto y = testutil::random_column(rng, n);

    const double rho = pop_cov(x, y) / std::sqrt(pop_var(x) * pop_var(y));
    CHECK(testutil::close(correlation_dissimilarity(x, y), 1.0 - std::abs(rho),
                          1e-9));
    CHECK(testutil::close(lsre(x, y), regression_residual_oracle(x, y), 1e-9));
    CHECK(testutil::close(
        mici(x, y), jacobi_min_eigenvalue(pop_var(x), pop_cov(x, y), pop_var(y)),
        1e-9));
  }
}

TEST_CASE("cc is invariant under affine reparameterization") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + testutil::uindex(rng, 40);
    const auto x = testutil::random_column(rng, n);
    const auto y = testutil::random_column(rng, n);
    const double a = testutil::urange(rng, -10.0, 10.0);
    const double b = testutil::urange(rng, -10.0, 10.0);
    double c = testutil::urange(rng, 0.1, 5.0) * (trial % 2 == 0 ? 1.0 : -1.0);
    double d = testutil::urange(rng, 0.1, 5.0) * (trial % 3 == 0 ? -1.0 : 1.0);
    std::vector<double> u(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = (x[i] - a) / c;
      v[i] = (y[i] - b) / d;
    }
    CHECK(testutil::close(correlation_dissimilarity(x, y),
                          correlation_dissimilarity(u, v), 1e-9));
  }
}

TEST_CASE("lsre scaling law and translation invariance") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + testutil::uindex(rng, 40);
    const auto x = testutil::random_column(rng, n);
    const auto y = testutil::random_column(rng, n);
    const double c = testutil::urange(rng, 0.2, 4.0);
    const double d = testutil::urange(rng, 0.2, 4.0);
    std::vector<double> u(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = x[i] / c;
      v[i] = y[i] / d;
    }
    CHECK(testutil::close(lsre(x, y), d * d * lsre(u, v), 1e-9));

    const double a = testutil::urange(rng, -20.0, 20.0);
    const double b = testutil::urange(rng, -20.0, 20.0);
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = x[i] + a;
      ys[i] = y[i] + b;
    }
    CHECK(testutil::close(lsre(x, y), lsre(xs, ys), 1e-9));
  }
}

TEST_CASE("mici is symmetric and bounded by half the variance sum") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + testutil::uindex(rng, 40);
    const auto x = testutil::random_column(rng, n);
    const auto y = testutil::random_column(rng, n);
    const double ab = mici(x, y);
    const double ba = mici(y, x);
    CHECK(testutil::close(ab, ba, 1e-9));
    CHECK(ab >= 0.0);
    CHECK(ab <= 0.5 * (pop_var(x) + pop_var(y)) + 1e-12);
  }
}

TEST_CASE("similarity matrix mirrors pairwise calls") {
  std::mt19937_64 rng(23);
  const FeatureMatrix m = testutil::random_matrix(rng, 30, 5);
  std::vector<std::vector<double>> cols(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols[c] = m.column(c);

  for (const Measure measure : {Measure::CC, Measure::LSRE, Measure::MICI}) {
    const SimilarityMatrix sim = build_similarity_matrix(m, measure);
    for (std::size_t i = 0; i < m.cols(); ++i) {
      CHECK(sim.at(i, i) == 0.0);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (i == j) continue;
        double expected = 0.0;
        switch (measure) {
          case Measure::CC:
            expected = correlation_dissimilarity(cols[i], cols[j]);
            break;
          case Measure::LSRE:
            expected = lsre(cols[i], cols[j]);
            break;
          case Measure::MICI:
            expected = mici(cols[i], cols[j]);
            break;
        }
        CHECK(sim.at(i, j) == expected);  // exact: same arithmetic path
      }
    }
    if (measure != Measure::LSRE) {
      for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          CHECK(sim.at(i, j) == sim.at(j, i));
    }
  }
}

TEST_CASE("identical features are maximally similar") {
  FeatureMatrix m(10, 2);
  std::mt19937_64 rng(29);
  for (std::size_t r = 0; r < 10; ++r) {
    const double v = testutil::urand(rng);
    m.at(r, 0) = v;
    m.at(r, 1) = v;
  }
  for (const Measure measure : {Measure::CC, Measure::LSRE, Measure::MICI}) {
    const SimilarityMatrix sim = build_similarity_matrix(m, measure);
    CHECK(sim.at(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sim.at(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("parallel similarity build is bit-identical to sequential") {
  std::mt19937_64 rng(31);
  const FeatureMatrix m = testutil::random_matrix(rng, 200, 24);
  for (const Measure measure : {Measure::CC, Measure::LSRE, Measure::MICI}) {
    const SimilarityMatrix serial = build_similarity_matrix(m, measure, 1);
    const SimilarityMatrix parallel = build_similarity_matrix(m, measure, 8);
    CHECK(serial.values == parallel.values);
  }
}
