#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <unordered_set>

#include "cubescore/enumerate.hpp"
#include "cubescore/errors.hpp"
#include "cubescore/linalg.hpp"
#include "cubescore/matrix.hpp"
#include "cubescore/matrix_io.hpp"
#include "oracles.hpp"

using namespace cubescore;

namespace {

DenseMatrix permute_rows(const DenseMatrix& m, const std::vector<std::size_t>& p) {
  DenseMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(p[i], j);
  return out;
}

}  // namespace

TEST_SUITE("matrix_core") {

TEST_CASE("dense matrix invariants") {
  CHECK_THROWS_AS(DenseMatrix(0, 3), ShapeError);
  CHECK_THROWS_AS(DenseMatrix(2, 0), ShapeError);
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), ShapeError);
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, NAN}), PreconditionError);
  CHECK_THROWS_AS(DenseMatrix(1, 1, {INFINITY}), PreconditionError);
  CHECK_THROWS_AS((DenseMatrix{{1.0, 2.0}, {3.0}}), ShapeError);

  const DenseMatrix a{{1, 2, 3}, {4, 5, 6}};
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a.data().size() == 6);
  CHECK(a.transpose().transpose() == a);
  CHECK(a.column(2) == std::vector<double>{3, 6});
  const DenseMatrix p = a * a.transpose();
  CHECK(p == DenseMatrix{{14, 32}, {32, 77}});
  CHECK_THROWS_AS(a * a, ShapeError);
  CHECK(max_abs_diff(a, a) == 0.0);
  CHECK(to_string(Mode::monte_carlo) == "monte_carlo");
}

TEST_CASE("sign vector packing") {
  const std::vector<int> s{1, -1, -1, 1, -1};
  const auto x = SignVector::from_signs(s);
  CHECK(x.size() == 5);
  CHECK(x.signs() == s);
  CHECK(x.low_bits() == 0b10110u);
  CHECK(SignVector::from_bits(5, 0b10110u) == x);
  CHECK_THROWS_AS(SignVector::from_signs(std::vector<int>{1, 0}), PreconditionError);
  CHECK_THROWS_AS(SignVector::from_bits(65, 0), CapacityError);

  SignVector big(130);
  big.flip(129);
  big.set(64, -1);
  CHECK(big[129] == -1);
  CHECK(big[64] == -1);
  CHECK(big[0] == 1);
  for (double v : big.as_reals()) CHECK(std::abs(v) == 1.0);
}

TEST_CASE("tolerance and analysis parameter validation") {
  CHECK_NOTHROW(ToleranceConfig{}.validate());
  CHECK_THROWS_AS((ToleranceConfig{0.0, 1e-8, 1e-9}.validate()), PreconditionError);
  CHECK_THROWS_AS((ToleranceConfig{1e-9, 1.0, 1e-9}.validate()), PreconditionError);
  CHECK_NOTHROW(AnalysisParams{}.validate());
  CHECK_THROWS_AS((AnalysisParams{1.0, 1.0}.validate()), PreconditionError);
  CHECK_THROWS_AS((AnalysisParams{0.5, -1.0}.validate()), PreconditionError);
  CHECK_NOTHROW((AnalysisParams{0.5, 0.0}.validate()));
}

TEST_CASE("gray enumeration n=1 and n=2") {
  std::vector<std::vector<int>> seen;
  std::vector<std::optional<std::size_t>> flips;
  gray_enumerate(1, [&](std::optional<std::size_t> f, const SignVector& x) {
    flips.push_back(f);
    seen.push_back(x.signs());
  });
  REQUIRE(seen.size() == 2);
  CHECK(seen[0] == std::vector<int>{1});
  CHECK(seen[1] == std::vector<int>{-1});
  CHECK(!flips[0].has_value());
  CHECK(flips[1] == std::optional<std::size_t>{0});

  seen.clear();
  gray_enumerate(2, [&](std::optional<std::size_t>, const SignVector& x) { seen.push_back(x.signs()); });
  REQUIRE(seen.size() == 4);
  for (std::size_t k = 1; k < seen.size(); ++k) {
    int diff = 0;
    for (std::size_t i = 0; i < 2; ++i) diff += seen[k][i] != seen[k - 1][i];
    CHECK(diff == 1);
  }
}

TEST_CASE("gray enumeration n=12 matches a binary counter") {
  std::multiset<std::uint64_t> gray;
  SignVector prev(12);
  bool first = true;
  gray_enumerate(12, [&](std::optional<std::size_t> f, const SignVector& x) {
    if (first) {
      CHECK(!f.has_value());
      CHECK(x == SignVector(12));
      first = false;
    } else {
      REQUIRE(f.has_value());
      SignVector expect = prev;
      expect.flip(*f);
      CHECK(expect == x);
    }
    prev = x;
    gray.insert(x.low_bits());
  });
  std::multiset<std::uint64_t> naive;
  for (std::uint64_t k = 0; k < 4096; ++k) naive.insert(k);
  CHECK(gray.size() == 4096);
  CHECK(gray == naive);
}

TEST_CASE("gray enumeration visits 2^n distinct vectors") {
  for (std::size_t n : {5u, 13u, 20u}) {
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t visits = 0;
    gray_enumerate(n, [&](std::optional<std::size_t>, const SignVector& x) {
      seen.insert(x.low_bits());
      ++visits;
    });
    CHECK(visits == (std::uint64_t{1} << n));
    CHECK(seen.size() == visits);
  }
}

TEST_CASE("enumeration capacity") {
  auto noop = [](std::optional<std::size_t>, const SignVector&) {};
  CHECK_THROWS_AS(gray_enumerate(0, noop), CapacityError);
  CHECK_THROWS_AS(gray_enumerate(31, noop), CapacityError);
  CHECK_NOTHROW(check_enumeration_size(30));
}

TEST_CASE("chunk plan covers the index space") {
  for (std::size_t n = 1; n <= 30; ++n) {
    const auto plan = ChunkPlan::for_dimension(n);
    CHECK(plan.chunk_size * plan.chunk_count == (std::uint64_t{1} << n));
  }
}

TEST_CASE("chunked incremental matvec stays within 1e-12 of fresh products") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {6u, 12u, 20u}) {
    const DenseMatrix m = oracle::random_matrix(n, n, rng);
    FlipTable table(m);
    std::vector<double> y(n), fresh(n);
    double worst = 0.0;
    std::uint64_t visits = 0;
    const std::uint64_t stride = n == 20 ? 97 : 1;
    const auto plan = ChunkPlan::for_dimension(n);
    for (std::uint64_t c = 0; c < plan.chunk_count; ++c) {
      gray_walk(table, plan.begin(c), plan.end(c), y, [&](std::uint64_t bits, std::span<const double> cur) {
        if (visits++ % stride) return;
        const auto direct = oracle::matvec(m, oracle::sign_vector(n, bits));
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(cur[i] - direct[i]));
      });
    }
    CHECK(visits == (std::uint64_t{1} << n));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("block seeds are distinct") {
  std::set<std::uint64_t> s;
  for (std::uint64_t b = 0; b < 1000; ++b) s.insert(block_seed(7, b));
  CHECK(s.size() == 1000);
  CHECK(block_seed(7, 3) == block_seed(7, 3));
  CHECK(block_seed(7, 3) != block_seed(8, 3));
}

TEST_CASE("compensated summation recovers cancelled terms") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("is_orthogonal examples") {
  CHECK(is_orthogonal(DenseMatrix::identity(5), 1e-9));
  CHECK(is_orthogonal(oracle::householder_all_ones(4), 1e-9));
  // Householder identity (I - 2J/n)^2 = I, checked by direct product.
  const DenseMatrix h = oracle::householder_all_ones(4);
  CHECK(max_abs_diff(h * h, DenseMatrix::identity(4)) <= 1e-15);
  CHECK_FALSE(is_orthogonal(DenseMatrix::ones(3, 3), 1e-9));
  CHECK_THROWS_AS(is_orthogonal(DenseMatrix(2, 3), 1e-9), ShapeError);
}

TEST_CASE("is_orthogonal invariant under permutations and sign flips") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const DenseMatrix q = oracle::random_signed_permutation(n, rng) * oracle::householder_all_ones(n) *
                          oracle::random_signed_permutation(n, rng);
    CHECK(is_orthogonal(q, 1e-9));
    const DenseMatrix p = oracle::random_signed_permutation(n, rng);
    CHECK(is_orthogonal(p * q, 1e-9));
    CHECK(is_orthogonal(q * p, 1e-9));
    const DenseMatrix bad = q + 0.01 * DenseMatrix::ones(n, n);
    const bool base = is_orthogonal(bad, 1e-9);
    CHECK(is_orthogonal(p * bad, 1e-9) == base);
    CHECK(is_orthogonal(bad * p, 1e-9) == base);
  }
}

TEST_CASE("is_column_stochastic examples") {
  CHECK(is_column_stochastic(DenseMatrix::identity(4), 1e-9));
  CHECK(is_column_stochastic((1.0 / 3.0) * DenseMatrix::ones(3, 3), 1e-9));
  const DenseMatrix neg{{1.2, 0.0}, {-0.2, 1.0}};
  CHECK_FALSE(is_column_stochastic(neg, 1e-9));
  const DenseMatrix off{{0.5, 0.0}, {0.4, 1.0}};
  CHECK_FALSE(is_column_stochastic(off, 1e-9));
}

TEST_CASE("numeric_rank examples") {
  CHECK(numeric_rank(DenseMatrix::identity(5), 1e-8) == 5);
  const std::vector<double> t{1.0, -2.0, 0.5, 3.0};
  DenseMatrix outer(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) outer(i, j) = t[i] * t[j];
  CHECK(numeric_rank(outer, 1e-8) == 1);
  const DenseMatrix h = DenseMatrix::identity(4) - 0.5 * DenseMatrix::ones(4, 4);
  CHECK(numeric_rank(h, 1e-8) == 4);
  CHECK(numeric_rank(DenseMatrix(3, 3), 1e-8) == 0);
  CHECK(numeric_rank(DenseMatrix(2, 5, {1, 2, 3, 4, 5, 2, 4, 6, 8, 10}), 1e-8) == 1);
}

TEST_CASE("numeric_rank pivoted QR branch above 512") {
  std::mt19937_64 rng(3);
  DenseMatrix m(600, 3);
  const DenseMatrix base = oracle::random_gaussian(600, 2, rng);
  for (std::size_t i = 0; i < 600; ++i) {
    m(i, 0) = base(i, 0);
    m(i, 1) = base(i, 1);
    m(i, 2) = base(i, 0) - 2.0 * base(i, 1);
  }
  CHECK(numeric_rank(m, 1e-8) == 2);
}

TEST_CASE("jacobi eigenvalues agree with a reference solver") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {1u, 2u, 5u, 12u, 30u}) {
    const DenseMatrix g = oracle::random_gaussian(n, n, rng);
    const DenseMatrix s = g + g.transpose();
    Eigen::MatrixXd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(i, j) = s(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(e, Eigen::EigenvaluesOnly);
    const auto mine = symmetric_eigenvalues(s);
    REQUIRE(mine.size() == n);
    CHECK(std::is_sorted(mine.begin(), mine.end()));
    for (std::size_t i = 0; i < n; ++i) CHECK(mine[i] == doctest::Approx(ref.eigenvalues()(i)).epsilon(1e-10));
  }
  const auto diag = symmetric_eigenvalues(DenseMatrix{{3, 0}, {0, -1}});
  CHECK(diag == std::vector<double>{-1, 3});
}

TEST_CASE("inverse and trace") {
  const DenseMatrix a{{2, 1}, {1, 1}};
  CHECK(max_abs_diff(inverse(a), DenseMatrix{{1, -1}, {-1, 2}}) <= 1e-14);
  CHECK(trace(a) == 3.0);
  CHECK_THROWS_AS(inverse(DenseMatrix::ones(2, 2)), ConstructionError);
  CHECK_THROWS_AS(inverse(DenseMatrix(2, 3)), ShapeError);
}

TEST_CASE("matrix file round trips bit-exactly") {
  const auto dir = std::filesystem::temp_directory_path() / "cubescore_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "id3.txt";
  save_matrix(DenseMatrix::identity(3), path);
  CHECK(load_matrix(path) == DenseMatrix::identity(3));

  std::mt19937_64 rng(1);
  const DenseMatrix rect = oracle::random_gaussian(2, 3, rng);
  save_matrix(rect, path);
  CHECK(load_matrix(path) == rect);

  const DenseMatrix awkward{{0.1, 1.0 / 3.0, -5e-324}, {1e308, -0.0, 2.0 / 7.0}};
  CHECK(parse_matrix(format_matrix(awkward)) == awkward);
  std::filesystem::remove_all(dir);
}

TEST_CASE("matrix file parsing") {
  CHECK(parse_matrix("# comment\n\n2 2\n1 0\n\n0 1\n") == DenseMatrix::identity(2));
  CHECK(parse_matrix("1 3\n  1.5\t-2e3   4\n") == DenseMatrix{{1.5, -2000.0, 4.0}});

  auto parse_error = [](const std::string& text, std::size_t line) {
    try {
      parse_matrix(text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(std::string(e.kind()) == "parse");
      return true;
    }
    return false;
  };
  CHECK(parse_error("2\n1 0\n0 1\n", 1));
  CHECK(parse_error("two 2\n1 0\n0 1\n", 1));
  CHECK(parse_error("0 2\n", 1));
  CHECK(parse_error("2 2\n1 0\n0\n", 3));
  CHECK(parse_error("2 2\n1 0\n", 3));
  CHECK(parse_error("1 1\n1\n2\n", 3));
  CHECK(parse_error("1 2\n1 abc\n", 2));
  CHECK(parse_error("1 1\nnan\n", 2));
  CHECK(parse_error("", 1));
  CHECK_THROWS_AS(load_matrix("/nonexistent/matrix.txt"), PreconditionError);
}

TEST_CASE("parse error reports the column") {
  try {
    parse_matrix("1 3\n1 2 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
}

}  // TEST_SUITE
