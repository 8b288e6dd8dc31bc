#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cubescore {

inline constexpr std::size_t kGapRankCap = 10;

/// Generalized arithmetic progression
///   Q = { offset + k_1 g_1 + ... + k_r g_r : lower_i <= k_i <= upper_i }.
/// An empty offset means the zero vector.
struct GapDescriptor {
  std::size_t ambient_dim = 0;
  std::vector<std::vector<double>> generators;
  std::vector<std::int64_t> lower;
  std::vector<std::int64_t> upper;
  std::vector<double> offset;
  bool symmetric = false;

  /// Symmetric GAP {sum k_i g_i : |k_i| <= bounds_i}.
  static GapDescriptor symmetric_box(std::vector<std::vector<double>> generators, std::span<const std::int64_t> bounds);

  std::size_t rank() const noexcept { return generators.size(); }

  /// Checks shapes, lower <= upper, and the symmetric-form invariant.
  /// Throws PreconditionError.
  void validate() const;

  /// prod (upper_i - lower_i + 1); saturates at UINT64_MAX.
  std::uint64_t box_size() const;

  /// The element with coefficient vector k.
  std::vector<double> element(std::span<const std::int64_t> k) const;

  /// Every coefficient vector in the box, lexicographic with the last index fastest.
  std::vector<std::vector<std::int64_t>> coefficient_box() const;

  /// True when all box_size() elements are distinct (cells of width tol).
  bool is_proper(double tol) const;
};

/// Integer coordinates of v in Q: least squares against the generators,
/// rounded, then verified in max-norm against tol and the box bounds.
/// Throws DegenerateGeneratorError if the generators are linearly dependent
/// and CapacityError if rank > 10.
std::optional<std::vector<std::int64_t>> gap_membership(std::span<const double> v, const GapDescriptor& q,
                                                         double tol);

struct LatticeFit {
  std::vector<std::int64_t> coefficients;
  double residual = 0.0;  // max-norm of offset + sum k_i g_i - v
};

/// Rounded least-squares coordinates of v against the generators, ignoring bounds.
LatticeFit lattice_fit(std::span<const double> v, const GapDescriptor& q);

}  // namespace cubescore
