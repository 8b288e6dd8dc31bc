#include <doctest.h>

#include <cmath>
#include <random>

#include "cubescore/errors.hpp"
#include "cubescore/score.hpp"
#include "oracles.hpp"

using namespace cubescore;

TEST_SUITE("score") {

TEST_CASE("exact score examples") {
  const auto id = exact_score(DenseMatrix::identity(4), 1e-9);
  CHECK(id.score == 1.0);
  CHECK(id.hit_count == 16);
  CHECK(id.total == 16);
  CHECK(id.std_error == 0.0);
  CHECK(id.method == Mode::exact);
  CHECK(id.tolerance == 1e-9);

  const auto h = exact_score(oracle::householder_all_ones(4), 1e-9);
  CHECK(h.hit_count == 8);
  CHECK(h.score == 0.5);
  CHECK(oracle::score_hits(oracle::householder_all_ones(4), 1e-9) == 8);
}

TEST_CASE("signed permutations score 1") {
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 20; n += 3) CHECK(exact_score(oracle::random_signed_permutation(n, rng), 1e-9).score == 1.0);
}

TEST_CASE("exact score errors") {
  CHECK_THROWS_AS(exact_score(DenseMatrix(2, 3), 1e-9), ShapeError);
  CHECK_THROWS_AS(exact_score(DenseMatrix::identity(31), 1e-9), CapacityError);
}

TEST_CASE("gray-code score equals naive recount") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 11;
    // Signed permutations with sparse perturbations.
    DenseMatrix m = oracle::random_signed_permutation(n, rng);
    if (trial % 3 == 1) m = oracle::householder_all_ones(n) * m;
    if (trial % 3 == 2) m(0, (trial * 7) % n) += 0.5;
    for (double tol : {1e-9, 0.3}) {
      CHECK(exact_score(m, tol).hit_count == oracle::score_hits(m, tol));
    }
  }
}

TEST_CASE("exact score is independent of the thread count") {
  std::mt19937_64 rng(4);
  const DenseMatrix m = oracle::householder_all_ones(18) * oracle::random_signed_permutation(18, rng);
  const auto one = exact_score(m, 1e-9, 1);
  for (unsigned t : {2u, 3u, 8u}) CHECK(exact_score(m, 1e-9, t).hit_count == one.hit_count);
}

TEST_CASE("score invariance under permutations and sign flips") {
  std::mt19937_64 rng(8);
  for (std::size_t n : {4u, 6u, 10u}) {
    DenseMatrix m = oracle::householder_all_ones(n);
    m(1, 2) += 0.25;
    const auto base = exact_score(m, 1e-9).hit_count;
    const DenseMatrix p = oracle::random_signed_permutation(n, rng);
    const DenseMatrix q = oracle::random_signed_permutation(n, rng);
    CHECK(exact_score(p * m * q, 1e-9).hit_count == base);
  }
}

TEST_CASE("bilinear pair count equals hit count for orthogonal matrices") {
  std::mt19937_64 rng(23);
  for (std::size_t n : {2u, 4u, 6u, 8u}) {
    const DenseMatrix m = oracle::householder_all_ones(n) * oracle::random_signed_permutation(n, rng);
    CHECK(oracle::bilinear_max_pairs(m, 1e-9) == exact_score(m, 1e-9).hit_count);
  }
  const DenseMatrix p = oracle::random_signed_permutation(5, rng);
  CHECK(oracle::bilinear_max_pairs(p, 1e-9) == 32);
}

TEST_CASE("monte carlo score") {
  const auto id = mc_score(DenseMatrix::identity(6), 1e-9, 1000, 99);
  CHECK(id.score == 1.0);
  CHECK(id.std_error == 0.0);
  CHECK(id.method == Mode::monte_carlo);
  CHECK(id.total == 1000);

  const auto h = mc_score(oracle::householder_all_ones(4), 1e-9, 1'000'000, 7);
  CHECK(h.std_error == doctest::Approx(std::sqrt(h.score * (1 - h.score) / 1e6)));
  CHECK(std::abs(h.score - 0.5) <= 3 * h.std_error);

  const auto again = mc_score(oracle::householder_all_ones(4), 1e-9, 1'000'000, 7);
  CHECK(again.hit_count == h.hit_count);
  CHECK(again.std_error == h.std_error);
  const auto threaded = mc_score(oracle::householder_all_ones(4), 1e-9, 1'000'000, 7, 4);
  CHECK(threaded.hit_count == h.hit_count);
  CHECK(mc_score(oracle::householder_all_ones(4), 1e-9, 1'000'000, 8).hit_count != h.hit_count);

  CHECK_THROWS_AS(mc_score(DenseMatrix::identity(3), 1e-9, 0, 1), PreconditionError);
}

TEST_CASE("monte carlo handles n above the enumeration cap") {
  const auto r = mc_score(DenseMatrix::identity(200), 1e-9, 5000, 1, 2);
  CHECK(r.score == 1.0);
}

TEST_CASE("threshold score examples") {
  CHECK(threshold_score(DenseMatrix::identity(5), 0.5, Mode::exact, 0, 0).score == 1.0);
  const auto h = threshold_score(oracle::householder_all_ones(4), 0.9, Mode::exact, 0, 0);
  CHECK(h.score == 0.5);
  CHECK(h.threshold == 0.9);
  CHECK(h.hit_count == oracle::threshold_hits(oracle::householder_all_ones(4), 0.9));
  CHECK_THROWS_AS(threshold_score(DenseMatrix::identity(3), 0.0, Mode::exact, 0, 0), PreconditionError);
  CHECK_THROWS_AS(threshold_score(DenseMatrix::identity(31), 0.5, Mode::exact, 0, 0), CapacityError);
}

TEST_CASE("threshold score dominates exact score") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 3 + trial % 8;
    DenseMatrix m = oracle::householder_all_ones(n) * oracle::random_signed_permutation(n, rng);
    if (trial % 2) m(0, 0) += 0.1;
    const double tol = 1e-9;
    const double theta = std::pow(1.0 - tol, static_cast<double>(n));
    const auto s0 = exact_score(m, tol);
    const auto s = threshold_score(m, theta, Mode::exact, 0, 0);
    CHECK(s.hit_count >= s0.hit_count);
    CHECK(s.hit_count == oracle::threshold_hits(m, theta));
  }
}

TEST_CASE("threshold score in log space for large n") {
  // 60 x 60 diagonal with entries 0.9: product 0.9^60 ~ 1.8e-3 for every x.
  DenseMatrix m = 0.9 * DenseMatrix::identity(60);
  CHECK(threshold_score(m, 1e-3, Mode::monte_carlo, 2000, 1).score == 1.0);
  CHECK(threshold_score(m, 1e-2, Mode::monte_carlo, 2000, 1).score == 0.0);
  DenseMatrix tiny = 1e-10 * DenseMatrix::identity(60);
  CHECK(threshold_score(tiny, 1e-300, Mode::monte_carlo, 100, 1).score == 0.0);
}

TEST_CASE("product statistic") {
  CHECK(product_statistic(DenseMatrix::identity(4), SignVector::from_signs(std::vector<int>{1, -1, 1, -1})) == 1.0);
  const DenseMatrix h = oracle::householder_all_ones(4);
  CHECK(product_statistic(h, SignVector::from_signs(std::vector<int>{1, 1, 1, -1})) == 0.0);
  CHECK(product_statistic(h, SignVector::from_signs(std::vector<int>{1, 1, 1, 1})) == 1.0);
  CHECK_THROWS_AS(product_statistic(h, SignVector(3)), ShapeError);
}

}  // TEST_SUITE
