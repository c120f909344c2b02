#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace biasprobe {

/// Dense row-major matrix of doubles. Rows are checkpoints, columns professions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  /// Copies column `c`, rows [first, rows()).
  std::vector<double> column(std::size_t c, std::size_t first = 0) const {
    std::vector<double> out;
    out.reserve(rows_ > first ? rows_ - first : 0);
    for (std::size_t r = first; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  std::span<const double> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace biasprobe
