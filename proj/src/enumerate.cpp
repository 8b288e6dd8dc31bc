#include "cubescore/enumerate.hpp"

#include <string>

#include "cubescore/errors.hpp"

namespace cubescore {

void check_enumeration_size(std::size_t n, std::size_t cap, const char* what) {
  if (n < 1 || n > cap) {
    throw CapacityError(std::string(what) + " = " + std::to_string(n) + " outside the exhaustive range [1, " +
                        std::to_string(cap) + "]");
  }
}

void gray_enumerate(std::size_t n, const GrayVisitor& visitor) {
  check_enumeration_size(n);
  SignVector x(n);
  visitor(std::nullopt, x);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    x.flip(j);
    visitor(j, x);
  }
}

ChunkPlan ChunkPlan::for_dimension(std::size_t n) {
  constexpr std::size_t kChunkBits = 14;
  const std::size_t bits = std::min(n, kChunkBits);
  return {std::uint64_t{1} << bits, std::uint64_t{1} << (n - bits)};
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

FlipTable::FlipTable(const DenseMatrix& m)
    : rows_(m.rows()), cols_(m.cols()), columns_(m.rows() * m.cols()), doubled_(m.rows() * m.cols()) {
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) {
      columns_[j * rows_ + i] = m(i, j);
      doubled_[j * rows_ + i] = 2.0 * m(i, j);
    }
}

void FlipTable::evaluate(std::uint64_t bits, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    const double* c = columns_.data() + j * rows_;
    if ((bits >> j) & 1u) {
      for (std::size_t i = 0; i < rows_; ++i) y[i] -= c[i];
    } else {
      for (std::size_t i = 0; i < rows_; ++i) y[i] += c[i];
    }
  }
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept {
  // splitmix64 finalizer over (seed, block)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (block + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace cubescore
