#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "cubescore/matrix.hpp"

namespace cubescore {

enum class PermanentMethod { ryser, naive, bernoulli_exact, bernoulli_mc, balls_in_bins_mc };

std::string_view to_string(PermanentMethod m);

struct PermanentReport {
  double value = 0.0;
  PermanentMethod method = PermanentMethod::ryser;
  std::optional<std::uint64_t> samples;
  std::optional<double> std_error;
};

/// Inclusion-exclusion permanent over Gray-ordered column subsets
/// (Nijenhuis-Wilf form, 2^(n-1) terms), compensated summation. n <= 30.
PermanentReport ryser_permanent(const DenseMatrix& m, unsigned threads = 1);

/// Sum over all n! permutations. n <= 10; serves as the oracle for Ryser.
PermanentReport naive_permanent(const DenseMatrix& m);

/// per(M) = E_x prod_i x_i (Mx)_i over uniform x in {-1,1}^n.
/// Exact mode averages over the whole hypercube (n <= 25).
PermanentReport bernoulli_permanent(const DenseMatrix& m, Mode mode, std::uint64_t samples = 0,
                                    std::uint64_t seed = 0, unsigned threads = 1);

/// Estimates per(A) for column-stochastic A as the probability that n balls,
/// ball j landing in bin i with probability a_ij, occupy distinct bins.
PermanentReport balls_in_bins_estimate(const DenseMatrix& a, std::uint64_t samples, std::uint64_t seed,
                                       unsigned threads = 1, double stochastic_tol = 1e-9);

/// Upper bounds on per(A) from the little and splittable row counts:
/// (exp(-|L|/200), exp(-|S|/25000)).
std::pair<double, double> azuma_bounds(std::uint64_t little_count, std::uint64_t splittable_count);

}  // namespace cubescore
