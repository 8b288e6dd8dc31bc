#include "cubescore/constructors.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cubescore/enumerate.hpp"
#include "cubescore/errors.hpp"
#include "cubescore/linalg.hpp"
#include "cubescore/signed_sums.hpp"

namespace cubescore {

namespace {

constexpr double kOrthogonalFlagTol = 1e-9;
constexpr double kRankROrthogonalAssert = 1e-8;
constexpr double kAntisymmetryTol = 1e-12;
constexpr std::uint64_t kExample2GapCap = 1'000'000;

void check_signs(std::span<const int> signs, std::size_t n) {
  if (signs.size() != n) throw PreconditionError("expected " + std::to_string(n) + " signs");
  for (int s : signs)
    if (s != 1 && s != -1) throw PreconditionError("signs must be +1 or -1");
}

/// P(Bx = 0) when enumerable, otherwise 0 (no claim).
double null_bound(const DenseMatrix& b, double tol) {
  if (b.cols() > kSignedSumCap) return 0.0;
  return null_fraction(b, tol);
}

/// Every row of F0 has exactly one nonzero entry, equal to +1 or -1.
bool is_full_selector(const DenseMatrix& f) {
  for (std::size_t i = 0; i < f.rows(); ++i) {
    std::size_t nonzero = 0;
    for (double v : f.row(i)) {
      if (v == 0.0) continue;
      if (v != 1.0 && v != -1.0) return false;
      ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::perm_reflection: return "perm_reflection";
    case Family::selector: return "selector";
    case Family::example2: return "example2";
    case Family::rank_one: return "rank_one";
    case Family::rank_r: return "rank_r";
  }
  return "unknown";
}

ConstructionCertificate perm_reflection(std::size_t n, std::span<const std::size_t> pi, std::span<const int> signs) {
  if (n == 0) throw PreconditionError("n must be positive");
  if (pi.size() != n) throw PreconditionError("permutation length must equal n");
  check_signs(signs, n);
  std::vector<bool> seen(n, false);
  for (auto p : pi) {
    if (p >= n || seen[p]) throw PreconditionError("invalid permutation");
    seen[p] = true;
  }
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, pi[i]) = signs[i];
  return {m, Family::perm_reflection, 1.0, is_orthogonal(m, kOrthogonalFlagTol),
          PermReflectionParams{{pi.begin(), pi.end()}, {signs.begin(), signs.end()}}};
}

DenseMatrix selector_matrix(std::size_t n, std::span<const std::optional<SignedEntry>> assignment) {
  if (n == 0) throw PreconditionError("n must be positive");
  if (assignment.size() > n) throw PreconditionError("more row assignments than rows");
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (!assignment[i]) continue;
    const auto& e = *assignment[i];
    if (e.col >= n) throw PreconditionError("column index " + std::to_string(e.col) + " out of range");
    if (e.sign != 1 && e.sign != -1) throw PreconditionError("selector signs must be +1 or -1");
    m(i, e.col) = e.sign;
  }
  return m;
}

ConstructionCertificate selector_certificate(std::size_t n, std::span<const std::optional<SignedEntry>> assignment) {
  DenseMatrix m = selector_matrix(n, assignment);
  // Mx is on the hypercube for every x exactly when no row is zero.
  const double bound = is_full_selector(m) ? 1.0 : 0.0;
  return {m, Family::selector, bound, is_orthogonal(m, kOrthogonalFlagTol),
          SelectorParams{{assignment.begin(), assignment.end()}}};
}

ConstructionCertificate rank_one_orthogonal(std::size_t n, std::span<const double> t, double tol) {
  if (n == 0 || t.size() != n) throw PreconditionError("t must have length n");
  if (t[0] != 1.0) throw PreconditionError("t_1 must equal 1");
  double norm_sq = 0.0;
  for (double v : t) {
    if (!std::isfinite(v)) throw PreconditionError("t must be finite");
    norm_sq += v * v;
  }
  const double x = -2.0 / norm_sq;
  DenseMatrix m = DenseMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += x * t[i] * t[j];

  // Mx = x whenever t.x = 0.
  const DenseMatrix row(1, n, {t.begin(), t.end()});
  return {m, Family::rank_one, null_bound(row, tol), is_orthogonal(m, kOrthogonalFlagTol),
          RankOneParams{{t.begin(), t.end()}, x}};
}

ConstructionCertificate rank_r_orthogonal(std::size_t n, std::size_t r, const DenseMatrix& D, const DenseMatrix& A,
                                          std::span<const int> signs, double tol) {
  if (r == 0 || r >= n) throw PreconditionError("need 1 <= r < n");
  if (D.rows() != n - r || D.cols() != r) throw ShapeError("D must be (n-r) x r");
  if (A.rows() != r || A.cols() != r) throw ShapeError("A must be r x r");
  check_signs(signs, n);
  if (max_abs_diff(A, -1.0 * A.transpose()) > kAntisymmetryTol) throw PreconditionError("A must be antisymmetric");
  if (numeric_rank(D, 1e-8) < r) throw ConstructionError("D must have full column rank");

  const DenseMatrix K = DenseMatrix::identity(r) + D.transpose() * D - A;
  const DenseMatrix U = -2.0 * inverse(K);  // ConstructionError when singular

  DenseMatrix T(n, r);
  for (std::size_t i = 0; i < r; ++i) T(i, i) = 1.0;
  for (std::size_t i = 0; i < n - r; ++i)
    for (std::size_t j = 0; j < r; ++j) T(r + i, j) = D(i, j);

  DenseMatrix m = DenseMatrix::identity(n) + T * U * T.transpose();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) *= signs[i];

  if (!is_orthogonal(m, kRankROrthogonalAssert))
    throw InternalError("rank-r construction is not orthogonal to 1e-8");

  // Mx = Sx whenever T^T x = 0.
  return {m, Family::rank_r, null_bound(T.transpose(), tol), is_orthogonal(m, kOrthogonalFlagTol),
          RankRParams{U, D, A, {signs.begin(), signs.end()}}};
}

ConstructionCertificate example2_from_columns(const DenseMatrix& F0, const DenseMatrix& u, double tol) {
  if (!F0.square()) throw ShapeError("F0 must be square");
  const std::size_t n = F0.rows();
  if (n < 2) throw PreconditionError("example2 needs n >= 2");
  check_enumeration_size(n, kSignedSumCap, "n");
  if (!is_full_selector(F0)) throw PreconditionError("F0 must have exactly one +-1 entry per row");
  if (u.rows() != n || u.cols() != n - 1) throw ShapeError("expected n-1 perturbation columns of length n");

  const SignedSumMode mode = modal_signed_sum(u, tol);
  DenseMatrix U(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) U(i, j) = u(i, j);
    U(i, n - 1) = -mode.value[i];
  }
  // P(Ux = 0) = multiplicity / 2^(n-1).
  const double bound = std::ldexp(static_cast<double>(mode.multiplicity), -static_cast<int>(n - 1));
  DenseMatrix m = F0 + U;
  return {m, Family::example2, bound, is_orthogonal(m, kOrthogonalFlagTol),
          Example2Params{GapDescriptor{}, F0, U, {}, mode.multiplicity, mode.value, 0}};
}

ConstructionCertificate example2_perturbed(const DenseMatrix& F0, const GapDescriptor& q, std::uint64_t seed,
                                           double tol) {
  q.validate();
  if (!F0.square()) throw ShapeError("F0 must be square");
  const std::size_t n = F0.rows();
  check_enumeration_size(n, kSignedSumCap, "n");
  if (q.ambient_dim != n) throw ShapeError("GAP ambient dimension must equal n");
  if (q.box_size() > kExample2GapCap) throw CapacityError("GAP size exceeds 10^6");
  if (!q.is_proper(tol)) throw PreconditionError("GAP is not proper");

  std::mt19937_64 rng(block_seed(seed, 0));
  std::vector<std::vector<std::int64_t>> coeffs;
  DenseMatrix u(n, n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::vector<std::int64_t> k(q.rank());
    for (std::size_t g = 0; g < q.rank(); ++g) {
      const auto width = static_cast<std::uint64_t>(q.upper[g] - q.lower[g]) + 1;
      k[g] = q.lower[g] + static_cast<std::int64_t>(rng() % width);
    }
    const auto v = q.element(k);
    for (std::size_t i = 0; i < n; ++i) u(i, j) = v[i];
    coeffs.push_back(std::move(k));
  }

  ConstructionCertificate cert = example2_from_columns(F0, u, tol);
  auto& p = std::get<Example2Params>(cert.parameters);
  p.gap = q;
  p.drawn_coefficients = std::move(coeffs);
  p.seed = seed;
  return cert;
}

}  // namespace cubescore
