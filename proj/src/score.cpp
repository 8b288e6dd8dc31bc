#include "cubescore/score.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "cubescore/enumerate.hpp"
#include "cubescore/errors.hpp"
#include "sampling.hpp"

namespace cubescore {

namespace {

constexpr std::size_t kLogSpaceDimension = 50;

void require_square(const DenseMatrix& m, const char* op) {
  if (!m.square()) throw ShapeError(std::string(op) + " requires a square matrix");
}

bool on_hypercube(std::span<const double> y, double tol) {
  for (double v : y)
    if (std::abs(std::abs(v) - 1.0) > tol) return false;
  return true;
}

bool product_at_least(std::span<const double> y, double theta) {
  if (y.size() > kLogSpaceDimension) {
    double log_sum = 0.0;
    for (double v : y) {
      if (v == 0.0) return false;
      log_sum += std::log(std::abs(v));
    }
    return log_sum >= std::log(theta);
  }
  double prod = 1.0;
  for (double v : y) {
    if (v == 0.0) return false;
    prod *= std::abs(v);
  }
  return prod >= theta;
}

/// Counts Gray-code visits accepted by pred, chunk by chunk.
template <class Pred>
std::uint64_t exhaustive_count(const DenseMatrix& m, unsigned threads, Pred pred) {
  const std::size_t n = m.cols();
  check_enumeration_size(n);
  const FlipTable table(m);
  const ChunkPlan plan = ChunkPlan::for_dimension(n);
  std::vector<std::uint64_t> counts(plan.chunk_count, 0);
  for_each_chunk(plan.chunk_count, threads, [&](std::uint64_t c) {
    std::vector<double> y(m.rows());
    std::uint64_t hits = 0;
    gray_walk(table, plan.begin(c), plan.end(c), y, [&](std::uint64_t, std::span<const double> v) {
      if (pred(v)) ++hits;
    });
    counts[c] = hits;
  });
  std::uint64_t total = 0;
  for (auto h : counts) total += h;
  return total;
}

template <class Pred>
std::uint64_t sampled_count(const DenseMatrix& m, std::uint64_t samples, std::uint64_t seed, unsigned threads,
                            Pred pred) {
  const auto moments = detail::sample_moments(
      m, samples, seed, threads,
      [&](std::span<const double>, std::span<const double> y) { return pred(y) ? 1.0 : 0.0; });
  return static_cast<std::uint64_t>(std::llround(moments.sum));
}

double binomial_stderr(std::uint64_t hits, std::uint64_t samples) {
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

}  // namespace

ScoreReport exact_score(const DenseMatrix& m, double tol, unsigned threads) {
  require_square(m, "exact_score");
  const std::uint64_t hits = exhaustive_count(m, threads, [tol](std::span<const double> y) { return on_hypercube(y, tol); });
  ScoreReport r;
  r.hit_count = hits;
  r.total = std::uint64_t{1} << m.cols();
  r.score = static_cast<double>(hits) / static_cast<double>(r.total);
  r.method = Mode::exact;
  r.tolerance = tol;
  return r;
}

ScoreReport mc_score(const DenseMatrix& m, double tol, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  require_square(m, "mc_score");
  if (samples < 1) throw PreconditionError("samples must be at least 1");
  const std::uint64_t hits =
      sampled_count(m, samples, seed, threads, [tol](std::span<const double> y) { return on_hypercube(y, tol); });
  ScoreReport r;
  r.hit_count = hits;
  r.total = samples;
  r.score = static_cast<double>(hits) / static_cast<double>(samples);
  r.std_error = binomial_stderr(hits, samples);
  r.method = Mode::monte_carlo;
  r.tolerance = tol;
  return r;
}

ThresholdScoreReport threshold_score(const DenseMatrix& m, double theta, Mode mode, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads) {
  require_square(m, "threshold_score");
  if (!(theta > 0.0)) throw PreconditionError("threshold must be positive");
  const auto pred = [theta](std::span<const double> y) { return product_at_least(y, theta); };
  ThresholdScoreReport r;
  r.threshold = theta;
  r.method = mode;
  if (mode == Mode::exact) {
    r.hit_count = exhaustive_count(m, threads, pred);
    r.total = std::uint64_t{1} << m.cols();
  } else {
    if (samples < 1) throw PreconditionError("samples must be at least 1");
    r.hit_count = sampled_count(m, samples, seed, threads, pred);
    r.total = samples;
    r.std_error = binomial_stderr(r.hit_count, samples);
  }
  r.score = static_cast<double>(r.hit_count) / static_cast<double>(r.total);
  return r;
}

double product_statistic(const DenseMatrix& m, const SignVector& x) {
  if (x.size() != m.cols()) throw ShapeError("sign vector length does not match matrix columns");
  double prod = 1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += r[j] * x[j];
    prod *= std::abs(acc);
  }
  return prod;
}

}  // namespace cubescore
