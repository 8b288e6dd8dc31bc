#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cubescore/enumerate.hpp"
#include "cubescore/matrix.hpp"

namespace cubescore::detail {

struct SampleMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

/// Draws `samples` uniform sign vectors x in fixed seeded blocks and sums
/// f(x, Mx) and f(x, Mx)^2. Block b always uses block_seed(seed, b), and
/// block totals are combined in block order, so the result does not depend
/// on the thread count.
template <class F>
SampleMoments sample_moments(const DenseMatrix& m, std::uint64_t samples, std::uint64_t seed, unsigned threads,
                             F&& f) {
  const std::size_t n = m.cols();
  const std::size_t rows = m.rows();
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<SampleMoments> per_block(blocks);

  for_each_chunk(blocks, threads, [&](std::uint64_t b) {
    std::mt19937_64 rng(block_seed(seed, b));
    const std::uint64_t count = std::min(kSampleBlock, samples - b * kSampleBlock);
    std::vector<double> x(n);
    std::vector<double> y(rows);
    CompensatedSum sum;
    CompensatedSum sum_sq;
    for (std::uint64_t s = 0; s < count; ++s) {
      for (std::size_t base = 0; base < n; base += 64) {
        const std::uint64_t word = rng();
        const std::size_t top = std::min<std::size_t>(n, base + 64);
        for (std::size_t j = base; j < top; ++j) x[j] = ((word >> (j - base)) & 1u) ? -1.0 : 1.0;
      }
      for (std::size_t i = 0; i < rows; ++i) {
        const auto r = m.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += r[j] * x[j];
        y[i] = acc;
      }
      const double v = f(std::span<const double>(x), std::span<const double>(y));
      sum.add(v);
      sum_sq.add(v * v);
    }
    per_block[b] = {sum.value(), sum_sq.value()};
  });

  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (const auto& pb : per_block) {
    sum.add(pb.sum);
    sum_sq.add(pb.sum_sq);
  }
  return {sum.value(), sum_sq.value()};
}

}  // namespace cubescore::detail
