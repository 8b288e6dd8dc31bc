#pragma once

#include <cstdint>
#include <string_view>

#include "cubescore/matrix.hpp"

namespace cubescore {

/// Fraction of sign vectors x for which Mx lands back on the hypercube.
struct ScoreReport {
  std::uint64_t hit_count = 0;
  std::uint64_t total = 0;
  double score = 0.0;
  double std_error = 0.0;  // zero iff method == exact
  Mode method = Mode::exact;
  double tolerance = 0.0;
};

/// Fraction of x with prod_i |(Mx)_i| >= threshold.
struct ThresholdScoreReport {
  std::uint64_t hit_count = 0;
  std::uint64_t total = 0;
  double score = 0.0;
  double std_error = 0.0;
  Mode method = Mode::exact;
  double tolerance = 0.0;
  double threshold = 0.0;
};

/// Exhaustive s0(M): counts x with max_i ||(Mx)_i| - 1| <= tol over all
/// 2^n sign vectors. M must be square with n <= 30.
ScoreReport exact_score(const DenseMatrix& m, double tol, unsigned threads = 1);

/// Monte Carlo estimate of s0(M); deterministic for a fixed seed and
/// independent of the thread count.
ScoreReport mc_score(const DenseMatrix& m, double tol, std::uint64_t samples, std::uint64_t seed,
                     unsigned threads = 1);

/// Score against a product threshold theta > 0. Exact mode requires n <= 30;
/// products are accumulated in log space when n > 50.
ThresholdScoreReport threshold_score(const DenseMatrix& m, double theta, Mode mode, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads = 1);

/// prod_i |(Mx)_i|.
double product_statistic(const DenseMatrix& m, const SignVector& x);

}  // namespace cubescore
