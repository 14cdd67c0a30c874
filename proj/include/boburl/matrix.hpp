#ifndef BOBURL_MATRIX_HPP
#define BOBURL_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace boburl {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// out = a * b^T     (a: m x k, b: n x k, out: m x n). Forward-pass shape:
// both inner loops run over contiguous rows.
void matmul_abt(const Matrix& a, const Matrix& b, Matrix& out);

// out = a^T * b     (a: m x k, b: m x n, out: k x n). Weight-gradient shape.
void matmul_atb(const Matrix& a, const Matrix& b, Matrix& out);

// out = a * b       (a: m x k, b: k x n, out: m x n). Input-gradient shape.
void matmul_ab(const Matrix& a, const Matrix& b, Matrix& out);

}  // namespace boburl

#endif  // BOBURL_MATRIX_HPP
