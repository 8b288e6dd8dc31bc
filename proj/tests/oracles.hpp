#pragma once

// Test-only reference computations. Everything here recomputes from first
// principles (binary counting, full matrix-vector products, dictionaries of
// exact sums) and shares no code path with the library kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "cubescore/matrix.hpp"

namespace oracle {

using cubescore::DenseMatrix;

/// x for binary counter value k: bit j set -> x_j = -1.
inline std::vector<double> sign_vector(std::size_t n, std::uint64_t k) {
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = ((k >> j) & 1u) ? -1.0 : 1.0;
  return x;
}

inline std::vector<double> matvec(const DenseMatrix& m, const std::vector<double>& x) {
  std::vector<double> y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

/// Number of x in C_n with max_i ||(Mx)_i| - 1| <= tol, by full recompute.
inline std::uint64_t score_hits(const DenseMatrix& m, double tol) {
  const std::size_t n = m.cols();
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    const auto y = matvec(m, sign_vector(n, k));
    bool ok = true;
    for (double v : y) ok = ok && std::abs(std::abs(v) - 1.0) <= tol;
    hits += ok;
  }
  return hits;
}

/// Number of x with prod_i |(Mx)_i| >= theta.
inline std::uint64_t threshold_hits(const DenseMatrix& m, double theta) {
  const std::size_t n = m.cols();
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    const auto y = matvec(m, sign_vector(n, k));
    double p = 1.0;
    for (double v : y) p *= std::abs(v);
    hits += p >= theta;
  }
  return hits;
}

/// Max multiplicity of sum_i x_i a_i for integer-valued columns, keyed exactly.
inline std::uint64_t integer_mode_multiplicity(const DenseMatrix& vectors) {
  const std::size_t k = vectors.cols();
  std::map<std::vector<long long>, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
    std::vector<long long> key(vectors.rows(), 0);
    for (std::size_t j = 0; j < k; ++j) {
      const long long sign = ((s >> j) & 1u) ? -1 : 1;
      for (std::size_t i = 0; i < vectors.rows(); ++i) key[i] += sign * std::llround(vectors(i, j));
    }
    ++counts[key];
  }
  std::uint64_t best = 0;
  for (const auto& [key, c] : counts) best = std::max(best, c);
  return best;
}

/// #{(x, y) in C_n^2 : x^T M y = n (within tol)}.
inline std::uint64_t bilinear_max_pairs(const DenseMatrix& m, double tol) {
  const std::size_t n = m.cols();
  std::uint64_t count = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    const auto my = matvec(m, sign_vector(n, b));
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      const auto x = sign_vector(n, a);
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += x[i] * my[i];
      count += std::abs(dot - static_cast<double>(n)) <= tol;
    }
  }
  return count;
}

inline double factorial_over_power(std::size_t n) {
  double v = 1.0;
  for (std::size_t i = 1; i <= n; ++i) v *= static_cast<double>(i) / static_cast<double>(n);
  return v;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = -1.0,
                                 double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

inline DenseMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

inline DenseMatrix random_antisymmetric(std::size_t r, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  DenseMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      a(i, j) = u(rng);
      a(j, i) = -a(i, j);
    }
  return a;
}

/// Column-stochastic matrix with iid exponential-like weights normalized per column.
inline DenseMatrix random_stochastic(std::size_t n, std::mt19937_64& rng, double sharpness = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a(i, j) = std::pow(u(rng), sharpness);
      sum += a(i, j);
    }
    for (std::size_t i = 0; i < n; ++i) a(i, j) /= sum;
  }
  return a;
}

inline DenseMatrix random_signed_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, p[i]) = (rng() & 1u) ? -1.0 : 1.0;
  return m;
}

inline DenseMatrix householder_all_ones(std::size_t n) {
  DenseMatrix m = DenseMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= 2.0 / static_cast<double>(n);
  return m;
}

}  // namespace oracle
