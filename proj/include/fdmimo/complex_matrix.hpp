// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The fdmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FDMIMO_COMPLEX_MATRIX_HPP
#define FDMIMO_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fdmimo {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Carries every channel, precoder and
/// canceller in the simulator; units are set by the owning module.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const cplx> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    cplx* data() noexcept { return data_.data(); }
    const cplx* data() const noexcept { return data_.data(); }
    std::span<const cplx> entries() const noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scale) noexcept;

    bool operator==(const ComplexMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(cplx scale, ComplexMatrix a);
ComplexMatrix operator*(double scale, ComplexMatrix a);

// Matrix product through the active kernel backend.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// a * b^H without forming the adjoint.
ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

// alpha * x + beta * y (real coefficients), shapes must agree.
ComplexMatrix scale_add(double alpha, const ComplexMatrix& x, double beta, const ComplexMatrix& y);

std::vector<double> row_norms_sq(const ComplexMatrix& a);
double frobenius_norm_sq(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a) noexcept;
bool is_diagonal(const ComplexMatrix& a) noexcept;

// Columns [first, first + count).
ComplexMatrix column_block(const ComplexMatrix& a, std::size_t first, std::size_t count);
// Rows in the given order.
ComplexMatrix select_rows(const ComplexMatrix& a, std::span<const std::size_t> indices);
// Square submatrix on the given row/column index set.
ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::span<const std::size_t> indices);

} // namespace fdmimo

#endif
