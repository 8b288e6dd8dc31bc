#pragma once

// Exhaustive statistics of signed sums x_1 a_1 + ... + x_k a_k over the
// hypercube, used by the concentration probability and by the constructors
// that need the modal signed sum.

#include <cstdint>
#include <span>
#include <vector>

#include "cubescore/matrix.hpp"

namespace cubescore {

inline constexpr std::size_t kSignedSumCap = 24;

struct SignedSumMode {
  std::uint64_t multiplicity = 0;  // number of sign vectors hitting the mode
  std::uint64_t total = 0;         // 2^k
  std::vector<double> value;       // representative point of the modal group
};

/// Most frequent value of sum_i x_i a_i over x in {-1,1}^k, where values are
/// grouped by rounding each coordinate to the nearest multiple of group_tol.
/// Ties go to the group first reached in Gray-code order. Requires
/// 1 <= k <= 24 and 1 <= dim <= 64; `vectors` are the columns of a dim x k
/// matrix.
SignedSumMode modal_signed_sum(const DenseMatrix& vectors, double group_tol, unsigned threads = 1);

/// Fraction of x in {-1,1}^n with max_i |(Bx)_i| <= tol. Requires n <= 30.
double null_fraction(const DenseMatrix& b, double tol, unsigned threads = 1);

}  // namespace cubescore
