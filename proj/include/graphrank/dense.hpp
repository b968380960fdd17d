#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace graphrank {

/// Row-major matrix of finite doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Takes ownership of `values` (row-major); rejects wrong sizes and non-finite entries.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Copies the listed rows, in order.
  DenseMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Copies the listed columns, in order.
  DenseMatrix select_cols(std::span<const std::size_t> cols) const;
  DenseMatrix transposed() const;

  /// Throws NonFinite if any entry is NaN or infinite.
  void check_finite() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// [left | right]; row counts must agree.
DenseMatrix hconcat(const DenseMatrix& left, const DenseMatrix& right);

}  // namespace graphrank
