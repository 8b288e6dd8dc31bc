#include "cubescore/signed_sums.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <string>

#include "cubescore/enumerate.hpp"
#include "cubescore/errors.hpp"

namespace cubescore {

namespace {

constexpr std::size_t kMaxDim = 64;

/// Grid cell of a point: each coordinate rounded to a multiple of tol.
void grid_key(std::span<const double> v, double tol, std::vector<double>& key) {
  key.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double c = std::nearbyint(v[i] / tol);
    key[i] = c == 0.0 ? 0.0 : c;  // fold -0
  }
}

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t hash_key(std::span<const double> key) {
  std::uint64_t h = 0x6A09E667F3BCC909ull;
  for (double c : key) {
    std::uint64_t bits;
    std::memcpy(&bits, &c, sizeof bits);
    h = mix(h ^ bits) + 0x9E3779B97F4A7C15ull;
  }
  return h;
}

}  // namespace

SignedSumMode modal_signed_sum(const DenseMatrix& vectors, double group_tol, unsigned threads) {
  const std::size_t k = vectors.cols();
  const std::size_t dim = vectors.rows();
  check_enumeration_size(k, kSignedSumCap, "vector count");
  if (dim > kMaxDim) throw CapacityError("vector dimension " + std::to_string(dim) + " exceeds 64");
  if (!(group_tol > 0.0)) throw PreconditionError("group tolerance must be positive");

  const FlipTable table(vectors);
  const ChunkPlan plan = ChunkPlan::for_dimension(k);
  const std::uint64_t total = std::uint64_t{1} << k;

  // Pass 1: hash of the grid cell of every signed sum.
  std::vector<std::uint64_t> hashes(total);
  for_each_chunk(plan.chunk_count, threads, [&](std::uint64_t c) {
    std::vector<double> y(dim);
    std::vector<double> key;
    std::uint64_t idx = plan.begin(c);
    gray_walk(table, plan.begin(c), plan.end(c), y, [&](std::uint64_t, std::span<const double> v) {
      grid_key(v, group_tol, key);
      hashes[idx++] = hash_key(key);
    });
  });

  std::vector<std::uint64_t> sorted = hashes;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    best = std::max<std::uint64_t>(best, j - i);
    i = j;
  }
  std::vector<std::uint64_t> tied;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i == best) tied.push_back(sorted[i]);
    i = j;
  }

  // Pass 2: first Gray index whose cell is a modal cell.
  std::uint64_t first = 0;
  while (!std::binary_search(tied.begin(), tied.end(), hashes[first])) ++first;
  hashes.clear();
  hashes.shrink_to_fit();

  SignedSumMode mode;
  mode.total = total;
  mode.value.resize(dim);
  table.evaluate(gray_code(first), mode.value);
  std::vector<double> mode_key;
  grid_key(mode.value, group_tol, mode_key);

  // Pass 3: exact count of the chosen cell, which guards against hash collisions.
  std::vector<std::uint64_t> counts(plan.chunk_count, 0);
  for_each_chunk(plan.chunk_count, threads, [&](std::uint64_t c) {
    std::vector<double> y(dim);
    std::vector<double> key;
    std::uint64_t hits = 0;
    gray_walk(table, plan.begin(c), plan.end(c), y, [&](std::uint64_t, std::span<const double> v) {
      grid_key(v, group_tol, key);
      if (key == mode_key) ++hits;
    });
    counts[c] = hits;
  });
  std::uint64_t exact = 0;
  for (auto h : counts) exact += h;

  if (exact != best) {
    // A 64-bit collision merged two cells; fall back to exact counting.
    std::map<std::vector<double>, std::pair<std::uint64_t, std::uint64_t>> cells;  // key -> (count, first index)
    std::vector<double> y(dim);
    std::vector<double> key;
    std::uint64_t idx = 0;
    gray_walk(table, 0, total, y, [&](std::uint64_t, std::span<const double> v) {
      grid_key(v, group_tol, key);
      auto [it, inserted] = cells.try_emplace(key, 0, idx);
      ++it->second.first;
      ++idx;
    });
    std::uint64_t top = 0;
    std::uint64_t at = 0;
    for (const auto& [cell, stats] : cells) {
      if (stats.first > top || (stats.first == top && stats.second < at)) {
        top = stats.first;
        at = stats.second;
      }
    }
    table.evaluate(gray_code(at), mode.value);
    exact = top;
  }
  mode.multiplicity = exact;
  return mode;
}

double null_fraction(const DenseMatrix& b, double tol, unsigned threads) {
  const std::size_t n = b.cols();
  check_enumeration_size(n);
  const FlipTable table(b);
  const ChunkPlan plan = ChunkPlan::for_dimension(n);
  std::vector<std::uint64_t> counts(plan.chunk_count, 0);
  for_each_chunk(plan.chunk_count, threads, [&](std::uint64_t c) {
    std::vector<double> y(b.rows());
    std::uint64_t hits = 0;
    gray_walk(table, plan.begin(c), plan.end(c), y, [&](std::uint64_t, std::span<const double> v) {
      for (double e : v)
        if (std::abs(e) > tol) return;
      ++hits;
    });
    counts[c] = hits;
  });
  std::uint64_t hits = 0;
  for (auto h : counts) hits += h;
  return std::ldexp(static_cast<double>(hits), -static_cast<int>(n));
}

}  // namespace cubescore
