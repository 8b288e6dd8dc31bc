#pragma once

// Hypercube enumeration kernels shared by every exhaustive computation.
//
// Sign vectors are indexed by the reflected binary Gray code: step k visits
// the vector whose packed bits are k ^ (k >> 1), and the step from k-1 to k
// flips coordinate ctz(k). The index space [0, 2^n) is cut into a fixed
// number of chunks that depends on n only, so any reduction performed chunk
// by chunk and then combined in chunk order is identical for every thread
// count.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "cubescore/matrix.hpp"

namespace cubescore {

/// Visitor for gray_enumerate: flipped is empty on the first (all +1) visit.
using GrayVisitor = std::function<void(std::optional<std::size_t> flipped, const SignVector& x)>;

/// Visits all 2^n sign vectors in Gray-code order. Requires 1 <= n <= 30.
void gray_enumerate(std::size_t n, const GrayVisitor& visitor);

/// Throws CapacityError unless 1 <= n <= cap.
void check_enumeration_size(std::size_t n, std::size_t cap = kEnumerationCap, const char* what = "n");

inline std::uint64_t gray_code(std::uint64_t k) noexcept { return k ^ (k >> 1); }

/// Fixed partition of the 2^n index space.
struct ChunkPlan {
  std::uint64_t chunk_size;
  std::uint64_t chunk_count;

  static ChunkPlan for_dimension(std::size_t n);
  std::uint64_t begin(std::uint64_t chunk) const noexcept { return chunk * chunk_size; }
  std::uint64_t end(std::uint64_t chunk) const noexcept { return (chunk + 1) * chunk_size; }
};

/// Resolves a requested thread count; 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Runs fn(chunk) for chunk in [0, count) on up to `threads` workers.
template <class Fn>
void for_each_chunk(std::uint64_t count, unsigned threads, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(count, 1)));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < count; ++c) fn(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t c = next.fetch_add(1); c < count; c = next.fetch_add(1)) fn(c);
    });
  }
}

/// Column-major copy of a matrix with every column pre-doubled, for
/// incremental y = Mx maintenance across single-coordinate flips.
class FlipTable {
 public:
  explicit FlipTable(const DenseMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  /// y = M x where bit j of `bits` set means x_j = -1.
  void evaluate(std::uint64_t bits, std::span<double> y) const;

  /// Applies the flip of coordinate j; `now_negative` is the new sign state.
  void flip(std::size_t j, bool now_negative, std::span<double> y) const {
    const double* c = doubled_.data() + j * rows_;
    if (now_negative) {
      for (std::size_t i = 0; i < rows_; ++i) y[i] -= c[i];
    } else {
      for (std::size_t i = 0; i < rows_; ++i) y[i] += c[i];
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> columns_;
  std::vector<double> doubled_;
};

/// Walks Gray-code steps [begin, end), calling visit(bits, y) with y = Mx
/// maintained incrementally from a fresh evaluation at `begin`.
template <class Visit>
void gray_walk(const FlipTable& table, std::uint64_t begin, std::uint64_t end, std::span<double> y,
               Visit&& visit) {
  std::uint64_t bits = gray_code(begin);
  table.evaluate(bits, y);
  visit(bits, std::span<const double>(y));
  for (std::uint64_t k = begin + 1; k < end; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    bits ^= std::uint64_t{1} << j;
    table.flip(j, (bits >> j) & 1u, y);
    visit(bits, std::span<const double>(y));
  }
}

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Seeded generator for sample block `block`; independent of thread layout.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept;

/// Number of Monte Carlo samples drawn from one seeded block.
inline constexpr std::uint64_t kSampleBlock = 1u << 16;

}  // namespace cubescore
