#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cubescore/gap.hpp"
#include "cubescore/matrix.hpp"
#include "cubescore/sparse_sign.hpp"

namespace cubescore {

// ---------------------------------------------------------------------------
// Dominant entries of orthogonal matrices

struct RowMaximum {
  double abs_value = 0.0;
  std::size_t col = 0;  // lowest column on ties
};

struct DominanceReport {
  std::vector<RowMaximum> rows;
  double epsilon = 0.0;
  double threshold = 0.0;  // 1 - n^(-1 + epsilon)
  std::size_t dominated_count = 0;
  bool column_injective = true;  // dominated rows peak in distinct columns
};

DominanceReport dominance_analysis(const DenseMatrix& m, double epsilon);

// ---------------------------------------------------------------------------
// M = F + residual split

struct GapFit {
  GapDescriptor gap;                       // generators are residual columns
  std::vector<std::size_t> generator_columns;
  std::vector<std::vector<std::int64_t>> coefficients;  // per residual column
  double max_residual = 0.0;
};

struct DecompositionReport {
  SparseSignMatrix F;
  DenseMatrix residual;
  std::size_t residual_rank = 0;
  std::vector<std::size_t> kept_rows;
  std::vector<std::size_t> kept_cols;
  std::optional<GapFit> gap_fit;
};

/// Snaps the largest-magnitude entry of each row to +-1 when it lies within
/// snap_tol of +-1, and reports the remainder. When the remainder has rank
/// 1..10 its pivot columns are used as generators of a fitted GAP.
DecompositionReport decompose(const DenseMatrix& m, double snap_tol, double rank_tol);

// ---------------------------------------------------------------------------
// Concentration probability

struct ConcentrationReport {
  double rho = 0.0;
  std::uint64_t multiplicity = 0;
  std::uint64_t total = 0;
  std::vector<double> mode;
};

/// rho(a_1..a_n) = max_a P(sum x_i a_i = a), sums grouped within group_tol.
/// The vectors are the columns of `vectors` (d x n, n <= 24, d <= 64).
ConcentrationReport concentration_probability(const DenseMatrix& vectors, double group_tol, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Rows of column-stochastic matrices

enum class RowKind { little, splittable, dominated };

std::string_view to_string(RowKind k);

struct RowClass {
  RowKind kind = RowKind::little;
  std::size_t col = 0;  // dominated only
  double entry = 0.0;   // dominated only
  double tail_sum = 0.0;
};

/// little: l1 norm <= 0.9. splittable: entries split into two parts each
/// summing to >= 0.1. dominated otherwise, in which case the largest entry
/// exceeds 0.8 and the rest sum to less than 0.1. Entries must be >= 0.
RowClass classify_row(std::span<const double> row);

struct StochasticReport {
  std::vector<RowClass> rows;
  std::size_t little_count = 0;
  std::size_t splittable_count = 0;
  std::size_t dominated_count = 0;
  bool dominated_columns_injective = true;
  double little_bound = 1.0;      // exp(-|L|/200)
  double splittable_bound = 1.0;  // exp(-|S|/25000)
  std::optional<double> permanent;
};

/// Classifies every row of a column-stochastic matrix; for n <= 20 attaches
/// the permanent and checks it against both bounds (InternalError if not).
StochasticReport stochastic_certificate(const DenseMatrix& a, double tol = 1e-9, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Orthogonal rank-r blocks

struct RankRVerification {
  double identity_residual = 0.0;  // max |U + U^T + U^T U + U^T D^T D U|
  double max_eig_sym = 0.0;        // largest eigenvalue of U + U^T
  double max_diag_dud = 0.0;       // largest diagonal entry of D U D^T
  double trace_dud = 0.0;
  double trace_bound = 0.0;        // 2r
  bool identity_ok = false;
  bool negative_semidefinite = false;
  bool diag_nonpositive = false;
  bool trace_ok = false;

  bool all_ok() const { return identity_ok && negative_semidefinite && diag_nonpositive && trace_ok; }
};

/// Checks the orthogonality identities of a rank-r block (U, D). D must have
/// full column rank.
RankRVerification verify_rank_r_structure(const DenseMatrix& U, const DenseMatrix& D, double identity_tol = 1e-10,
                                          double psd_tol = 1e-9);

/// tr((I + diag(E) - B)^{-1}) for positive E and antisymmetric B; throws
/// InternalError if the value leaves [-psd_tol, r + psd_tol].
double trace_claim_check(std::span<const double> e_diag, const DenseMatrix& B, double psd_tol = 1e-9);

// ---------------------------------------------------------------------------
// Distance-preserving maps of hypercube points

struct SignPair {
  SignVector x;
  SignVector y;
};

struct ProcrustesFit {
  DenseMatrix M;
  double max_residual = 0.0;  // max over pairs of ||Mx - y||_inf
};

/// Orthogonal M minimizing sum ||Mx - y||^2 (reflections allowed).
ProcrustesFit procrustes_fit(std::span<const SignPair> pairs);

struct HammingCheck {
  std::size_t delta = 0;
  bool euclid_identity_ok = false;  // delta == ||x - y||^2 / 4
};

HammingCheck hamming_check(const SignVector& x, const SignVector& y);

}  // namespace cubescore
