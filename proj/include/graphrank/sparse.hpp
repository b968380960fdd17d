#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace graphrank {

/// Square or rectangular CSR matrix. Column indices are strictly increasing
/// within each row and every stored value is finite.
class SparseRowMatrix {
 public:
  struct Entry {
    std::size_t col;
    double value;
  };

  SparseRowMatrix() = default;
  SparseRowMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                  std::vector<std::size_t> col_indices, std::vector<double> values);

  static SparseRowMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t r) const {
    return {col_indices_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
  }

  /// Stored value at (r, c), or 0 when absent.
  double at(std::size_t r, std::size_t c) const;

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const SparseRowMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

}  // namespace graphrank
