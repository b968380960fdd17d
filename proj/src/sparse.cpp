#include "graphrank/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "graphrank/error.hpp"

namespace graphrank {

SparseRowMatrix::SparseRowMatrix(std::size_t rows, std::size_t cols,
                                 std::vector<std::size_t> row_offsets,
                                 std::vector<std::size_t> col_indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  require(row_offsets_.size() == rows_ + 1 && row_offsets_.front() == 0 &&
              row_offsets_.back() == col_indices_.size() && col_indices_.size() == values_.size(),
          ErrorCode::ShapeMismatch, "inconsistent CSR arrays");
  for (std::size_t r = 0; r < rows_; ++r) {
    require(row_offsets_[r] <= row_offsets_[r + 1], ErrorCode::ShapeMismatch,
            "row offsets decrease");
    for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      require(col_indices_[k] < cols_, ErrorCode::ShapeMismatch, "column index out of range");
      require(k == row_offsets_[r] || col_indices_[k - 1] < col_indices_[k],
              ErrorCode::ShapeMismatch, "column indices not strictly increasing");
      require(std::isfinite(values_[k]), ErrorCode::NonFinite, "sparse value");
    }
  }
}

SparseRowMatrix SparseRowMatrix::identity(std::size_t n) {
  std::vector<std::size_t> offsets(n + 1);
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i <= n; ++i) offsets[i] = i;
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return {n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0)};
}

double SparseRowMatrix::at(std::size_t r, std::size_t c) const {
  const auto row = row_cols(r);
  const auto it = std::lower_bound(row.begin(), row.end(), c);
  if (it == row.end() || *it != c) return 0.0;
  return row_values(r)[static_cast<std::size_t>(it - row.begin())];
}

}  // namespace graphrank
