#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cubescore/matrix.hpp"

namespace cubescore {

/// A single signed unit entry of a row.
struct SignedEntry {
  std::size_t col = 0;
  int sign = 1;

  friend bool operator==(const SignedEntry&, const SignedEntry&) = default;
};

/// {-1,0,1} matrix with at most one nonzero per row.
struct SparseSignMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::optional<SignedEntry>> entries;  // one slot per row

  SparseSignMatrix(std::size_t rows, std::size_t cols) : rows(rows), cols(cols), entries(rows) {}

  std::size_t nonzero_count() const;
  DenseMatrix to_dense() const;

  friend bool operator==(const SparseSignMatrix&, const SparseSignMatrix&) = default;
};

}  // namespace cubescore
