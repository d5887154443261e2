// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "pbdfs/linkage.hpp"

namespace pbdfs {

/// Minimal row-major dense matrix; just enough for the GCN arithmetic.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  double* row(int i) { return &data[static_cast<std::size_t>(i) * cols]; }
  const double* row(int i) const { return &data[static_cast<std::size_t>(i) * cols]; }
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  assert(a.cols == b.rows);
  Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    const double* arow = a.row(i);
    double* orow = out.row(i);
    for (int k = 0; k < a.cols; ++k) {
      const double av = arow[k];
      if (av == 0.0) continue;
      const double* brow = b.row(k);
      for (int j = 0; j < b.cols; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

// a^T b, without materializing the transpose
inline Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
  assert(a.rows == b.rows);
  Matrix out(a.cols, b.cols);
  for (int k = 0; k < a.rows; ++k) {
    const double* arow = a.row(k);
    const double* brow = b.row(k);
    for (int i = 0; i < a.cols; ++i) {
      const double av = arow[i];
      if (av == 0.0) continue;
      double* orow = out.row(i);
      for (int j = 0; j < b.cols; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

// a b^T
inline Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
  assert(a.cols == b.cols);
  Matrix out(a.rows, b.rows);
  for (int i = 0; i < a.rows; ++i) {
    const double* arow = a.row(i);
    double* orow = out.row(i);
    for (int j = 0; j < b.rows; ++j) {
      const double* brow = b.row(j);
      double s = 0.0;
      for (int k = 0; k < a.cols; ++k) s += arow[k] * brow[k];
      orow[j] = s;
    }
  }
  return out;
}

/// Sparse-dense product L * h for the (symmetric) normalized Laplacian.
inline Matrix spmm(const NormalizedLaplacian& lap, const Matrix& h) {
  assert(lap.n == h.rows);
  Matrix out(h.rows, h.cols);
  for (int i = 0; i < lap.n; ++i) {
    double* orow = out.row(i);
    for (int k = lap.row_ptr[i]; k < lap.row_ptr[i + 1]; ++k) {
      const double v = lap.vals[k];
      const double* hrow = h.row(lap.cols[k]);
      for (int j = 0; j < h.cols; ++j) orow[j] += v * hrow[j];
    }
  }
  return out;
}

}  // namespace pbdfs
