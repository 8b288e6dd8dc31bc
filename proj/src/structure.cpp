#include "cubescore/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "cubescore/errors.hpp"
#include "cubescore/linalg.hpp"
#include "cubescore/permanent.hpp"
#include "cubescore/signed_sums.hpp"
#include "eigen_bridge.hpp"

namespace cubescore {

namespace {

constexpr double kLittleMass = 0.9;
constexpr double kSplitMass = 0.1;
constexpr std::size_t kCertificatePermanentCap = 20;
constexpr double kAntisymmetryTol = 1e-12;

RowMaximum row_maximum(std::span<const double> row) {
  RowMaximum best;
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double a = std::abs(row[j]);
    if (a > best.abs_value) best = {a, j};
  }
  return best;
}

}  // namespace

std::size_t SparseSignMatrix::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.has_value(); }));
}

DenseMatrix SparseSignMatrix::to_dense() const {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    if (entries[i]) m(i, entries[i]->col) = entries[i]->sign;
  return m;
}

std::string_view to_string(RowKind k) {
  switch (k) {
    case RowKind::little: return "little";
    case RowKind::splittable: return "splittable";
    case RowKind::dominated: return "dominated";
  }
  return "unknown";
}

DominanceReport dominance_analysis(const DenseMatrix& m, double epsilon) {
  if (!m.square()) throw ShapeError("dominance_analysis requires a square matrix");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  const std::size_t n = m.rows();
  DominanceReport rep;
  rep.epsilon = epsilon;
  rep.threshold = 1.0 - std::pow(static_cast<double>(n), -1.0 + epsilon);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const RowMaximum best = row_maximum(m.row(i));
    rep.rows.push_back(best);
    if (best.abs_value > 0.0 && best.abs_value >= rep.threshold) {
      ++rep.dominated_count;
      if (used[best.col]) rep.column_injective = false;
      used[best.col] = true;
    }
  }
  return rep;
}

DecompositionReport decompose(const DenseMatrix& m, double snap_tol, double rank_tol) {
  if (!(snap_tol >= 0.0 && snap_tol < 0.5)) throw PreconditionError("snap_tol must lie in [0, 0.5)");
  SparseSignMatrix F(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const RowMaximum best = row_maximum(m.row(i));
    if (std::abs(best.abs_value - 1.0) <= snap_tol) F.entries[i] = SignedEntry{best.col, m(i, best.col) < 0 ? -1 : 1};
  }
  DenseMatrix residual = m - F.to_dense();
  const std::size_t rank = numeric_rank(residual, rank_tol);

  std::vector<std::size_t> kept_rows(m.rows());
  std::iota(kept_rows.begin(), kept_rows.end(), 0);
  std::vector<std::size_t> kept_cols(m.cols());
  std::iota(kept_cols.begin(), kept_cols.end(), 0);

  DecompositionReport rep{F, residual, rank, kept_rows, kept_cols, std::nullopt};
  if (rank == 0 || rank > kGapRankCap) return rep;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(detail::to_eigen(residual));
  const auto& perm = qr.colsPermutation().indices();
  GapFit fit;
  for (std::size_t g = 0; g < rank; ++g) fit.generator_columns.push_back(static_cast<std::size_t>(perm(g)));
  std::sort(fit.generator_columns.begin(), fit.generator_columns.end());

  fit.gap.ambient_dim = residual.rows();
  for (auto c : fit.generator_columns) fit.gap.generators.push_back(residual.column(c));
  fit.gap.lower.assign(rank, 0);
  fit.gap.upper.assign(rank, 0);

  for (std::size_t j = 0; j < residual.cols(); ++j) {
    const LatticeFit lf = lattice_fit(residual.column(j), fit.gap);
    for (std::size_t g = 0; g < rank; ++g) {
      fit.gap.lower[g] = std::min(fit.gap.lower[g], lf.coefficients[g]);
      fit.gap.upper[g] = std::max(fit.gap.upper[g], lf.coefficients[g]);
    }
    fit.max_residual = std::max(fit.max_residual, lf.residual);
    fit.coefficients.push_back(lf.coefficients);
  }
  fit.gap.symmetric = true;
  for (std::size_t g = 0; g < rank; ++g) fit.gap.symmetric &= fit.gap.lower[g] == -fit.gap.upper[g];
  rep.gap_fit = std::move(fit);
  return rep;
}

ConcentrationReport concentration_probability(const DenseMatrix& vectors, double group_tol, unsigned threads) {
  const SignedSumMode mode = modal_signed_sum(vectors, group_tol, threads);
  return {static_cast<double>(mode.multiplicity) / static_cast<double>(mode.total), mode.multiplicity, mode.total,
          mode.value};
}

RowClass classify_row(std::span<const double> row) {
  double sum = 0.0;
  std::size_t arg = 0;
  double top = -1.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (!(row[j] >= 0.0)) throw PreconditionError("classify_row requires nonnegative entries");
    sum += row[j];
    if (row[j] > top) {
      top = row[j];
      arg = j;
    }
  }
  const double tail = sum - top;
  if (sum <= kLittleMass) return {RowKind::little, 0, 0.0, tail};
  if (top < kSplitMass || tail >= kSplitMass) return {RowKind::splittable, 0, 0.0, tail};
  return {RowKind::dominated, arg, top, tail};
}

StochasticReport stochastic_certificate(const DenseMatrix& a, double tol, unsigned threads) {
  if (!a.square()) throw ShapeError("stochastic_certificate requires a square matrix");
  if (!is_column_stochastic(a, tol)) throw PreconditionError("matrix is not column-stochastic");
  const std::size_t n = a.rows();
  StochasticReport rep;
  std::vector<bool> used(n, false);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row[j] = std::max(a(i, j), 0.0);
    const RowClass rc = classify_row(row);
    switch (rc.kind) {
      case RowKind::little: ++rep.little_count; break;
      case RowKind::splittable: ++rep.splittable_count; break;
      case RowKind::dominated:
        ++rep.dominated_count;
        if (used[rc.col]) rep.dominated_columns_injective = false;
        used[rc.col] = true;
        break;
    }
    rep.rows.push_back(rc);
  }
  std::tie(rep.little_bound, rep.splittable_bound) = azuma_bounds(rep.little_count, rep.splittable_count);

  if (n <= kCertificatePermanentCap) {
    const double per = ryser_permanent(a, threads).value;
    rep.permanent = per;
    const double slack = 1e-9;
    if (per > rep.little_bound * (1.0 + slack) + 1e-12 || per > rep.splittable_bound * (1.0 + slack) + 1e-12)
      throw InternalError("permanent exceeds the little/splittable row bound");
  }
  return rep;
}

RankRVerification verify_rank_r_structure(const DenseMatrix& U, const DenseMatrix& D, double identity_tol,
                                          double psd_tol) {
  const std::size_t r = U.rows();
  if (!U.square()) throw ShapeError("U must be square");
  if (D.cols() != r) throw ShapeError("D must have r columns");
  if (numeric_rank(D, 1e-8) < r) throw PreconditionError("D must have full column rank");

  const DenseMatrix Ut = U.transpose();
  const DenseMatrix identity_lhs = U + Ut + Ut * U + Ut * D.transpose() * D * U;
  const DenseMatrix zero(r, r);
  const DenseMatrix dud = D * U * D.transpose();

  RankRVerification v;
  v.identity_residual = max_abs_diff(identity_lhs, zero);
  v.max_eig_sym = symmetric_eigenvalues(U + Ut).back();
  v.max_diag_dud = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dud.rows(); ++i) v.max_diag_dud = std::max(v.max_diag_dud, dud(i, i));
  v.trace_dud = trace(dud);
  v.trace_bound = 2.0 * static_cast<double>(r);
  v.identity_ok = v.identity_residual <= identity_tol;
  v.negative_semidefinite = v.max_eig_sym <= psd_tol;
  v.diag_nonpositive = v.max_diag_dud <= psd_tol;
  v.trace_ok = std::abs(v.trace_dud) <= v.trace_bound;
  return v;
}

double trace_claim_check(std::span<const double> e_diag, const DenseMatrix& B, double psd_tol) {
  const std::size_t r = e_diag.size();
  if (r == 0) throw PreconditionError("E must be nonempty");
  if (B.rows() != r || B.cols() != r) throw ShapeError("B must be r x r");
  for (double e : e_diag)
    if (!(e > 0.0)) throw PreconditionError("E entries must be positive");
  if (max_abs_diff(B, -1.0 * B.transpose()) > kAntisymmetryTol) throw PreconditionError("B must be antisymmetric");

  DenseMatrix K = -1.0 * B;
  for (std::size_t i = 0; i < r; ++i) K(i, i) += 1.0 + e_diag[i];
  double value = 0.0;
  try {
    value = trace(inverse(K));
  } catch (const ConstructionError&) {
    throw PreconditionError("I + E - B is singular");
  }
  if (value < -psd_tol || value > static_cast<double>(r) + psd_tol)
    throw InternalError("trace " + std::to_string(value) + " outside [0, r]");
  return value;
}

ProcrustesFit procrustes_fit(std::span<const SignPair> pairs) {
  if (pairs.empty()) throw PreconditionError("procrustes_fit needs at least one pair");
  const std::size_t n = pairs.front().x.size();
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : pairs) {
    if (p.x.size() != n || p.y.size() != n) throw ShapeError("all sign vectors must share one length");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cross(i, j) += p.y[i] * p.x[j];
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd M = svd.matrixU() * svd.matrixV().transpose();

  ProcrustesFit fit{detail::from_eigen(M), 0.0};
  for (const auto& p : pairs) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += M(i, j) * p.x[j];
      fit.max_residual = std::max(fit.max_residual, std::abs(acc - p.y[i]));
    }
  }
  return fit;
}

HammingCheck hamming_check(const SignVector& x, const SignVector& y) {
  if (x.size() != y.size()) throw ShapeError("sign vectors differ in length");
  HammingCheck h;
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) ++h.delta;
    const double d = x[i] - y[i];
    dist_sq += d * d;
  }
  h.euclid_identity_ok = dist_sq / 4.0 == static_cast<double>(h.delta);
  return h;
}

}  // namespace cubescore
