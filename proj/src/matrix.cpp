#include "boburl/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "boburl/errors.hpp"

namespace boburl {

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void matmul_abt(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.cols())
    throw DimensionError("matmul_abt: inner dimensions differ");
  out = Matrix(a.rows(), b.rows());
  const std::size_t k = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double* oi = out.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double* bj = b.row(j);
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += ai[p] * bj[p];
      oi[j] = acc;
    }
  }
}

void matmul_atb(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.rows() != b.rows())
    throw DimensionError("matmul_atb: inner dimensions differ");
  out = Matrix(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    const double* bi = b.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double scale = ai[p];
      if (scale == 0.0) continue;
      double* op = out.row(p);
      for (std::size_t q = 0; q < b.cols(); ++q) op[q] += scale * bi[q];
    }
  }
}

void matmul_ab(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul_ab: inner dimensions differ");
  out = Matrix(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double* oi = out.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double scale = ai[p];
      if (scale == 0.0) continue;
      const double* bp = b.row(p);
      for (std::size_t q = 0; q < b.cols(); ++q) oi[q] += scale * bp[q];
    }
  }
}

}  // namespace boburl
