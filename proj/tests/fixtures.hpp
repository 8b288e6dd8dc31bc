#pragma once

// Seeded generators of library inputs shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "cubescore/constructors.hpp"
#include "oracles.hpp"

namespace fixtures {

using cubescore::ConstructionCertificate;
using cubescore::DenseMatrix;

struct RankRInstance {
  ConstructionCertificate cert;
  DenseMatrix D;
  DenseMatrix A;
};

/// Rank-r orthogonal construction whose diagonal entries are all >= min_diag.
/// D has entries of magnitude in [0.6, 1] with random signs; column scale and
/// the size of the antisymmetric part are swept per draw until the diagonal
/// qualifies.
inline std::optional<RankRInstance> dominant_rank_r(std::size_t n, std::size_t r, std::mt19937_64& rng,
                                                    double min_diag = 0.8, int max_draws = 400) {
  for (int draw = 0; draw < max_draws; ++draw) {
    DenseMatrix g = oracle::random_matrix(n - r, r, rng, 0.6, 1.0);
    for (std::size_t i = 0; i < n - r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (rng() & 1u) g(i, j) = -g(i, j);
    const DenseMatrix b = oracle::random_antisymmetric(r, 1.0, rng);
    for (double s : {4.0, 6.0, 9.0, 12.0, 16.0, 25.0, 36.0}) {
      for (double a : {0.0, 2.0, 10.0, 40.0, 160.0}) {
        const DenseMatrix D = std::sqrt(s * 3.0 / static_cast<double>(n - r)) * g;
        const DenseMatrix A = a * b;
        auto cert = cubescore::rank_r_orthogonal(n, r, D, A, std::vector<int>(n, 1));
        double lowest = 1.0;
        for (std::size_t i = 0; i < n; ++i) lowest = std::min(lowest, cert.matrix(i, i));
        if (lowest >= min_diag) return RankRInstance{std::move(cert), D, A};
      }
    }
  }
  return std::nullopt;
}

}  // namespace fixtures
