#include "cubescore/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "cubescore/errors.hpp"
#include "eigen_bridge.hpp"

namespace cubescore {

bool is_orthogonal(const DenseMatrix& m, double tol) {
  if (!m.square()) throw ShapeError("is_orthogonal requires a square matrix");
  const std::size_t n = m.rows();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += m(i, a) * m(i, b);
      if (std::abs(dot - (a == b ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

bool is_column_stochastic(const DenseMatrix& a, double tol) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a(i, j) < -tol) return false;
      sum += a(i, j);
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

std::size_t numeric_rank(const DenseMatrix& m, double tol) {
  constexpr std::size_t kSvdLimit = 512;
  const Eigen::MatrixXd e = detail::to_eigen(m);
  if (m.rows() <= kSvdLimit && m.cols() <= kSvdLimit) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
    const double cutoff = tol * sigma(0);
    return static_cast<std::size_t>((sigma.array() > cutoff).count());
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(e);
  const auto& r = qr.matrixQR();
  const Eigen::Index k = std::min(r.rows(), r.cols());
  const double largest = k > 0 ? std::abs(r(0, 0)) : 0.0;
  if (largest == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    if (std::abs(r(i, i)) > tol * largest) ++rank;
  return rank;
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& s) {
  if (!s.square()) throw ShapeError("symmetric_eigenvalues requires a square matrix");
  const std::size_t n = s.rows();
  DenseMatrix a = s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off <= 1e-30 * std::max(diag, 1e-300)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating a(p,q) (Golub & Van Loan, sym.schur2).
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

DenseMatrix inverse(const DenseMatrix& m) {
  if (!m.square()) throw ShapeError("inverse requires a square matrix");
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(detail::to_eigen(m));
  if (!lu.isInvertible()) throw ConstructionError("matrix is singular");
  return detail::from_eigen(lu.inverse());
}

double trace(const DenseMatrix& m) {
  if (!m.square()) throw ShapeError("trace requires a square matrix");
  double t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace cubescore
