#include "cubescore/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cubescore/errors.hpp"

namespace cubescore {

namespace {

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw PreconditionError("matrix entries must be finite");
  }
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::exact ? "exact" : "monte_carlo"; }

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : DenseMatrix(rows, cols, std::vector<double>(rows * cols, 0.0)) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be at least 1x1");
  if (data_.size() != rows * cols) {
    throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
  check_finite(data_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw ShapeError("matrix dimensions must be at least 1x1");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  check_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::ones(std::size_t rows, std::size_t cols) {
  return DenseMatrix(rows, cols, std::vector<double>(rows * cols, 1.0));
}

std::vector<double> DenseMatrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("sum of mismatched shapes");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) { return a + (-1.0) * b; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("product of mismatched shapes");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("comparison of mismatched shapes");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

SignVector::SignVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

SignVector SignVector::from_signs(std::span<const int> signs) {
  SignVector v(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) v.set(i, signs[i]);
  return v;
}

SignVector SignVector::from_bits(std::size_t n, std::uint64_t bits) {
  if (n > 64) throw CapacityError("from_bits supports at most 64 coordinates");
  SignVector v(n);
  if (n > 0) v.words_[0] = n == 64 ? bits : bits & ((std::uint64_t{1} << n) - 1);
  return v;
}

void SignVector::set(std::size_t i, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("sign vector components must be +1 or -1");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (sign < 0)
    words_[i / 64] |= mask;
  else
    words_[i / 64] &= ~mask;
}

std::vector<int> SignVector::signs() const {
  std::vector<int> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

std::vector<double> SignVector::as_reals() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

void ToleranceConfig::validate() const {
  for (double t : {membership_tol, rank_tol, psd_tol}) {
    if (!(t > 0.0 && t < 1.0)) throw PreconditionError("tolerances must lie strictly between 0 and 1");
  }
}

void AnalysisParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  if (!(C >= 0.0)) throw PreconditionError("C must be nonnegative");
}

}  // namespace cubescore
