#include "cubescore/gap.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "cubescore/errors.hpp"

namespace cubescore {

namespace {

Eigen::MatrixXd generator_matrix(const GapDescriptor& q) {
  Eigen::MatrixXd g(q.ambient_dim, q.rank());
  for (std::size_t j = 0; j < q.rank(); ++j)
    for (std::size_t i = 0; i < q.ambient_dim; ++i) g(i, j) = q.generators[j][i];
  return g;
}

double offset_at(const GapDescriptor& q, std::size_t i) { return q.offset.empty() ? 0.0 : q.offset[i]; }

}  // namespace

GapDescriptor GapDescriptor::symmetric_box(std::vector<std::vector<double>> generators,
                                           std::span<const std::int64_t> bounds) {
  GapDescriptor q;
  q.ambient_dim = generators.empty() ? 0 : generators.front().size();
  q.generators = std::move(generators);
  for (auto b : bounds) {
    q.lower.push_back(-b);
    q.upper.push_back(b);
  }
  q.symmetric = true;
  q.validate();
  return q;
}

void GapDescriptor::validate() const {
  if (ambient_dim == 0) throw PreconditionError("GAP ambient dimension must be positive");
  if (lower.size() != rank() || upper.size() != rank())
    throw PreconditionError("GAP needs one lower and one upper bound per generator");
  for (const auto& g : generators)
    if (g.size() != ambient_dim) throw PreconditionError("GAP generator length differs from ambient dimension");
  if (!offset.empty() && offset.size() != ambient_dim)
    throw PreconditionError("GAP offset length differs from ambient dimension");
  for (std::size_t i = 0; i < rank(); ++i)
    if (lower[i] > upper[i]) throw PreconditionError("empty GAP: lower bound exceeds upper bound");
  if (symmetric) {
    for (std::size_t i = 0; i < rank(); ++i)
      if (lower[i] != -upper[i]) throw PreconditionError("symmetric GAP requires lower = -upper");
    for (double o : offset)
      if (o != 0.0) throw PreconditionError("symmetric GAP requires a zero offset");
  }
}

std::uint64_t GapDescriptor::box_size() const {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    const auto width = static_cast<std::uint64_t>(upper[i] - lower[i]) + 1;
    if (size > std::numeric_limits<std::uint64_t>::max() / width) return std::numeric_limits<std::uint64_t>::max();
    size *= width;
  }
  return size;
}

std::vector<double> GapDescriptor::element(std::span<const std::int64_t> k) const {
  std::vector<double> v(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) v[i] = offset_at(*this, i);
  for (std::size_t j = 0; j < rank(); ++j)
    for (std::size_t i = 0; i < ambient_dim; ++i) v[i] += static_cast<double>(k[j]) * generators[j][i];
  return v;
}

std::vector<std::vector<std::int64_t>> GapDescriptor::coefficient_box() const {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> k(lower);
  while (true) {
    out.push_back(k);
    std::size_t i = rank();
    while (i > 0) {
      --i;
      if (k[i] < upper[i]) {
        ++k[i];
        break;
      }
      k[i] = lower[i];
      if (i == 0) return out;
    }
    if (rank() == 0) return out;
  }
}

bool GapDescriptor::is_proper(double tol) const {
  std::set<std::vector<double>> cells;
  for (const auto& k : coefficient_box()) {
    auto v = element(k);
    for (double& c : v) {
      c = std::nearbyint(c / tol);
      if (c == 0.0) c = 0.0;
    }
    if (!cells.insert(std::move(v)).second) return false;
  }
  return true;
}

LatticeFit lattice_fit(std::span<const double> v, const GapDescriptor& q) {
  q.validate();
  if (v.size() != q.ambient_dim) throw ShapeError("vector length differs from GAP ambient dimension");
  if (q.rank() > kGapRankCap) throw CapacityError("GAP rank exceeds 10");

  Eigen::VectorXd rhs(q.ambient_dim);
  for (std::size_t i = 0; i < q.ambient_dim; ++i) rhs(i) = v[i] - offset_at(q, i);

  LatticeFit fit;
  if (q.rank() > 0) {
    const Eigen::MatrixXd g = generator_matrix(q);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
    qr.setThreshold(1e-10);
    if (static_cast<std::size_t>(qr.rank()) < q.rank())
      throw DegenerateGeneratorError("GAP generators are linearly dependent");
    const Eigen::VectorXd k = qr.solve(rhs);
    fit.coefficients.resize(q.rank());
    for (std::size_t j = 0; j < q.rank(); ++j) fit.coefficients[j] = std::llround(k(j));
  }
  const auto back = q.element(fit.coefficients);
  for (std::size_t i = 0; i < q.ambient_dim; ++i) fit.residual = std::max(fit.residual, std::abs(back[i] - v[i]));
  return fit;
}

std::optional<std::vector<std::int64_t>> gap_membership(std::span<const double> v, const GapDescriptor& q,
                                                         double tol) {
  LatticeFit fit = lattice_fit(v, q);
  if (fit.residual > tol) return std::nullopt;
  for (std::size_t j = 0; j < q.rank(); ++j)
    if (fit.coefficients[j] < q.lower[j] || fit.coefficients[j] > q.upper[j]) return std::nullopt;
  return std::move(fit.coefficients);
}

}  // namespace cubescore
