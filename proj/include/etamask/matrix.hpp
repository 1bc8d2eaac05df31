// Copyright 2026 The etamask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ETAMASK_MATRIX_HPP
#define ETAMASK_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace etamask {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Column vectors are d x 1 matrices.
// Shapes are validated by the free functions, not by element access.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  // d x 1 column vector from an entry list.
  static ComplexMatrix column(std::vector<cplx> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_ && rows_ > 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// Elementwise arithmetic (shape-checked).
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const cplx& s, const ComplexMatrix& m);
ComplexMatrix operator*(const ComplexMatrix& m, const cplx& s);
ComplexMatrix operator*(double s, const ComplexMatrix& m);
// Matrix product (delegates to kernels::mat_mul).
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& m);
cplx trace(const ComplexMatrix& m);
// Entrywise max modulus, the norm used by all tolerance checks.
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// ||m - m^dagger||_max.
double hermiticity_residual(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

}  // namespace etamask

#endif  // ETAMASK_MATRIX_HPP
