#include "cubescore/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "cubescore/enumerate.hpp"
#include "cubescore/errors.hpp"
#include "cubescore/linalg.hpp"
#include "sampling.hpp"

namespace cubescore {

namespace {

constexpr std::size_t kNaiveCap = 10;
constexpr std::size_t kBernoulliCap = 25;
constexpr std::size_t kBallsCap = 10000;
constexpr std::size_t kBitmapBins = 64;

void require_square(const DenseMatrix& m, const char* op) {
  if (!m.square()) throw ShapeError(std::string(op) + " requires a square matrix");
}

double sample_mean_stderr(double sum, double sum_sq, std::uint64_t samples) {
  if (samples < 2) return 0.0;
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return std::sqrt(var / n);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string_view to_string(PermanentMethod m) {
  switch (m) {
    case PermanentMethod::ryser: return "ryser";
    case PermanentMethod::naive: return "naive";
    case PermanentMethod::bernoulli_exact: return "bernoulli_exact";
    case PermanentMethod::bernoulli_mc: return "bernoulli_mc";
    case PermanentMethod::balls_in_bins_mc: return "balls_in_bins_mc";
  }
  return "unknown";
}

PermanentReport ryser_permanent(const DenseMatrix& m, unsigned threads) {
  require_square(m, "ryser_permanent");
  const std::size_t n = m.rows();
  check_enumeration_size(n);

  // per(A) = (-1)^(n-1) * 2 * sum_{S subset [n-1]} (-1)^|S| prod_i (x_i + sum_{j in S} a_ij)
  // with x_i = a_{i,n-1} - (1/2) sum_j a_ij.
  std::vector<double> base(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = m.row(i);
    base[i] = r[n - 1] - 0.5 * std::accumulate(r.begin(), r.end(), 0.0);
  }
  std::vector<double> cols((n - 1) * n);
  for (std::size_t j = 0; j + 1 < n; ++j)
    for (std::size_t i = 0; i < n; ++i) cols[j * n + i] = m(i, j);

  const ChunkPlan plan = ChunkPlan::for_dimension(n - 1);
  std::vector<double> partial(plan.chunk_count, 0.0);
  for_each_chunk(plan.chunk_count, threads, [&](std::uint64_t c) {
    std::vector<double> acc(base);
    std::uint64_t bits = gray_code(plan.begin(c));
    for (std::size_t j = 0; j + 1 < n; ++j)
      if ((bits >> j) & 1u)
        for (std::size_t i = 0; i < n; ++i) acc[i] += cols[j * n + i];

    CompensatedSum sum;
    auto add_term = [&] {
      double prod = 1.0;
      for (double v : acc) prod *= v;
      sum.add((std::popcount(bits) & 1) ? -prod : prod);
    };
    add_term();
    for (std::uint64_t k = plan.begin(c) + 1; k < plan.end(c); ++k) {
      const auto j = static_cast<std::size_t>(std::countr_zero(k));
      bits ^= std::uint64_t{1} << j;
      const double* col = cols.data() + j * n;
      if ((bits >> j) & 1u) {
        for (std::size_t i = 0; i < n; ++i) acc[i] += col[i];
      } else {
        for (std::size_t i = 0; i < n; ++i) acc[i] -= col[i];
      }
      add_term();
    }
    partial[c] = sum.value();
  });

  CompensatedSum total;
  for (double p : partial) total.add(p);
  const double sign = (n - 1) % 2 ? -1.0 : 1.0;
  return {sign * 2.0 * total.value(), PermanentMethod::ryser, std::nullopt, std::nullopt};
}

PermanentReport naive_permanent(const DenseMatrix& m) {
  require_square(m, "naive_permanent");
  const std::size_t n = m.rows();
  check_enumeration_size(n, kNaiveCap);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CompensatedSum sum;
  do {
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) prod *= m(i, perm[i]);
    sum.add(prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {sum.value(), PermanentMethod::naive, std::nullopt, std::nullopt};
}

PermanentReport bernoulli_permanent(const DenseMatrix& m, Mode mode, std::uint64_t samples, std::uint64_t seed,
                                    unsigned threads) {
  require_square(m, "bernoulli_permanent");
  const std::size_t n = m.rows();

  if (mode == Mode::monte_carlo) {
    if (samples < 1) throw PreconditionError("samples must be at least 1");
    const auto moments =
        detail::sample_moments(m, samples, seed, threads, [](std::span<const double> x, std::span<const double> y) {
          double prod = 1.0;
          for (std::size_t i = 0; i < x.size(); ++i) prod *= x[i] * y[i];
          return prod;
        });
    return {moments.sum / static_cast<double>(samples), PermanentMethod::bernoulli_mc, samples,
            sample_mean_stderr(moments.sum, moments.sum_sq, samples)};
  }

  check_enumeration_size(n, kBernoulliCap);
  const FlipTable table(m);
  const ChunkPlan plan = ChunkPlan::for_dimension(n);
  std::vector<double> partial(plan.chunk_count, 0.0);
  for_each_chunk(plan.chunk_count, threads, [&](std::uint64_t c) {
    std::vector<double> y(n);
    CompensatedSum sum;
    gray_walk(table, plan.begin(c), plan.end(c), y, [&](std::uint64_t bits, std::span<const double> v) {
      double prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) prod *= v[i];
      // prod_i x_i is the parity of the packed negative coordinates.
      sum.add((std::popcount(bits) & 1) ? -prod : prod);
    });
    partial[c] = sum.value();
  });
  CompensatedSum total;
  for (double p : partial) total.add(p);
  return {std::ldexp(total.value(), -static_cast<int>(n)), PermanentMethod::bernoulli_exact, std::nullopt,
          std::nullopt};
}

PermanentReport balls_in_bins_estimate(const DenseMatrix& a, std::uint64_t samples, std::uint64_t seed,
                                       unsigned threads, double stochastic_tol) {
  require_square(a, "balls_in_bins_estimate");
  const std::size_t n = a.rows();
  if (n > kBallsCap) throw CapacityError("balls_in_bins_estimate supports n <= 10000");
  if (samples < 1) throw PreconditionError("samples must be at least 1");
  if (!is_column_stochastic(a, stochastic_tol)) throw PreconditionError("matrix is not column-stochastic");

  // cdf[j*n + i] = sum_{k <= i} max(a_kj, 0): bin distribution of ball j.
  std::vector<double> cdf(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    double run = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      run += std::max(a(i, j), 0.0);
      cdf[j * n + i] = run;
    }
  }

  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  for_each_chunk(blocks, threads, [&](std::uint64_t b) {
    std::mt19937_64 rng(block_seed(seed, b));
    const std::uint64_t count = std::min(kSampleBlock, samples - b * kSampleBlock);
    std::vector<std::size_t> bins(n);
    std::uint64_t ok = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      std::uint64_t occupied = 0;
      bool collision = false;
      for (std::size_t j = 0; j < n; ++j) {
        const double* col = cdf.data() + j * n;
        const double u = uniform01(rng) * col[n - 1];
        const auto bin = static_cast<std::size_t>(std::upper_bound(col, col + n, u) - col);
        bins[j] = std::min(bin, n - 1);
        if (n <= kBitmapBins) {
          const std::uint64_t bit = std::uint64_t{1} << bins[j];
          if (occupied & bit) {
            collision = true;
            break;
          }
          occupied |= bit;
        }
      }
      if (n > kBitmapBins) {
        std::sort(bins.begin(), bins.end());
        collision = std::adjacent_find(bins.begin(), bins.end()) != bins.end();
      }
      if (!collision) ++ok;
    }
    hits[b] = ok;
  });

  const std::uint64_t total_hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  const double p = static_cast<double>(total_hits) / static_cast<double>(samples);
  return {p, PermanentMethod::balls_in_bins_mc, samples, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

std::pair<double, double> azuma_bounds(std::uint64_t little_count, std::uint64_t splittable_count) {
  return {std::exp(-static_cast<double>(little_count) / 200.0),
          std::exp(-static_cast<double>(splittable_count) / 25000.0)};
}

}  // namespace cubescore
