#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace cubescore {

/// Exhaustive enumeration versus seeded sampling.
enum class Mode { exact, monte_carlo };

std::string_view to_string(Mode m);

/// Largest dimension accepted by the exhaustive hypercube kernels.
inline constexpr std::size_t kEnumerationCap = 30;

/// Real rows x cols matrix stored row-major. All entries are finite.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix ones(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<double> column(std::size_t j) const;
  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

/// Largest absolute entry of a - b.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Element of {-1,+1}^n, one bit per coordinate; a set bit means -1.
class SignVector {
 public:
  explicit SignVector(std::size_t n);  // all +1
  static SignVector from_signs(std::span<const int> signs);
  static SignVector from_bits(std::size_t n, std::uint64_t bits);

  std::size_t size() const noexcept { return n_; }
  int operator[](std::size_t i) const { return negative(i) ? -1 : 1; }
  bool negative(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  void set(std::size_t i, int sign);

  std::vector<int> signs() const;
  std::vector<double> as_reals() const;
  /// Low 64 coordinates packed; exact for n <= 64.
  std::uint64_t low_bits() const noexcept { return words_.empty() ? 0 : words_[0]; }

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

/// Floating-point acceptance thresholds; every value lies in (0, 1).
struct ToleranceConfig {
  double membership_tol = 1e-9;
  double rank_tol = 1e-8;
  double psd_tol = 1e-9;

  void validate() const;
};

/// The constants epsilon in (0,1) and C >= 0 of the orthogonal dominance statement.
struct AnalysisParams {
  double epsilon = 0.5;
  double C = 1.0;

  void validate() const;
};

}  // namespace cubescore
