#include "graphrank/dense.hpp"

#include <cmath>
#include <string>

#include "graphrank/error.hpp"

namespace graphrank {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {
  require(std::isfinite(fill), ErrorCode::NonFinite, "fill value");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  require(values_.size() == rows * cols, ErrorCode::ShapeMismatch,
          std::to_string(values_.size()) + " values for " + std::to_string(rows) + "x" +
              std::to_string(cols));
  check_finite();
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  values_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, ErrorCode::ShapeMismatch, "ragged initializer");
    values_.insert(values_.end(), r.begin(), r.end());
  }
  check_finite();
}

DenseMatrix DenseMatrix::select_rows(std::span<const std::size_t> rows) const {
  DenseMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i] < rows_, ErrorCode::ShapeMismatch, "row index out of range");
    const auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

DenseMatrix DenseMatrix::select_cols(std::span<const std::size_t> cols) const {
  DenseMatrix out(rows_, cols.size());
  for (const std::size_t c : cols) {
    require(c < cols_, ErrorCode::ShapeMismatch, "column index out of range");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
  }
  return out;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

void DenseMatrix::check_finite() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::NonFinite, "entry (" + std::to_string(i / cols_) + "," +
                                            std::to_string(i % cols_) + ")");
    }
  }
}

DenseMatrix hconcat(const DenseMatrix& left, const DenseMatrix& right) {
  require(left.rows() == right.rows(), ErrorCode::ShapeMismatch, "hconcat row counts differ");
  DenseMatrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    auto dst = out.row(r);
    const auto a = left.row(r);
    const auto b = right.row(r);
    std::copy(a.begin(), a.end(), dst.begin());
    std::copy(b.begin(), b.end(), dst.begin() + static_cast<std::ptrdiff_t>(a.size()));
  }
  return out;
}

}  // namespace graphrank
