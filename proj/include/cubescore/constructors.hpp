#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "cubescore/gap.hpp"
#include "cubescore/matrix.hpp"
#include "cubescore/sparse_sign.hpp"

namespace cubescore {

enum class Family { perm_reflection, selector, example2, rank_one, rank_r };

std::string_view to_string(Family f);

struct PermReflectionParams {
  std::vector<std::size_t> permutation;
  std::vector<int> signs;
};

struct SelectorParams {
  std::vector<std::optional<SignedEntry>> assignment;
};

struct RankOneParams {
  std::vector<double> t;
  double x = 0.0;
};

struct RankRParams {
  DenseMatrix U;
  DenseMatrix D;
  DenseMatrix A;
  std::vector<int> signs;
};

struct Example2Params {
  GapDescriptor gap;
  DenseMatrix F0;
  DenseMatrix U;  // columns u_1..u_n
  std::vector<std::vector<std::int64_t>> drawn_coefficients;
  std::uint64_t modal_multiplicity = 0;
  std::vector<double> modal_value;
  std::uint64_t seed = 0;
};

using FamilyParams = std::variant<PermReflectionParams, SelectorParams, RankOneParams, RankRParams, Example2Params>;

/// A constructed matrix together with the data that produced it and the
/// score lower bound the construction guarantees.
struct ConstructionCertificate {
  DenseMatrix matrix;
  Family family;
  double claimed_score_lower_bound = 0.0;
  bool orthogonal = false;
  FamilyParams parameters;
};

/// (Mx)_i = signs_i * x_{pi(i)}; indices are 0-based.
ConstructionCertificate perm_reflection(std::size_t n, std::span<const std::size_t> pi, std::span<const int> signs);

/// {-1,0,1} matrix with row i equal to sign * e_col when assignment[i] is
/// set and zero otherwise; rows past the end of `assignment` are zero.
DenseMatrix selector_matrix(std::size_t n, std::span<const std::optional<SignedEntry>> assignment);
ConstructionCertificate selector_certificate(std::size_t n, std::span<const std::optional<SignedEntry>> assignment);

/// M = (delta_ij + x t_i t_j) with x = -2 / sum_i t_i^2, the nonzero root
/// of u_1.u_1 + 2x = 0. Requires t_1 = 1.
ConstructionCertificate rank_one_orthogonal(std::size_t n, std::span<const double> t, double tol = 1e-9);

/// M = S (I_n + T U T^T) with T = [I_r; D], U = -2 (I_r + D^T D - A)^{-1},
/// S = diag(signs). D is (n-r) x r of full column rank, A antisymmetric.
ConstructionCertificate rank_r_orthogonal(std::size_t n, std::size_t r, const DenseMatrix& D, const DenseMatrix& A,
                                          std::span<const int> signs, double tol = 1e-9);

/// Perturbs a full selector F0 by columns u_1..u_{n-1} drawn (seeded) from
/// Q plus u_n = -(modal value of sum_{i<n} x_i u_i). The claimed bound is
/// the modal multiplicity / 2^(n-1) = P(Ux = 0). Requires n <= 24.
ConstructionCertificate example2_perturbed(const DenseMatrix& F0, const GapDescriptor& q, std::uint64_t seed,
                                           double tol = 1e-9);

/// Same construction with caller-supplied u_1..u_{n-1} (columns of `u`).
ConstructionCertificate example2_from_columns(const DenseMatrix& F0, const DenseMatrix& u, double tol = 1e-9);

}  // namespace cubescore
