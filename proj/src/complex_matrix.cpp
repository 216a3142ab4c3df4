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

#include "fdmimo/complex_matrix.hpp"

#include "fdmimo/errors.hpp"
#include "fdmimo/kernels.hpp"

#include <cmath>
#include <string>

namespace fdmimo {

namespace {

std::string shape(const ComplexMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ContractError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw ContractError("ComplexMatrix: " + std::to_string(data_.size()) + " entries for " +
                            std::to_string(rows) + "x" + std::to_string(cols));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        m(i, i) = values[i];
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) noexcept {
    for (auto& v : data_)
        v *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx scale, ComplexMatrix a) { return a *= scale; }
ComplexMatrix operator*(double scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw ContractError("operator*: inner dimensions differ " + shape(a) + " * " + shape(b));
    ComplexMatrix c(a.rows(), b.cols());
    if (!c.empty())
        kernels::active().gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols())
        throw ContractError("multiply_adjoint: inner dimensions differ " + shape(a) + " * " + shape(b) + "^H");
    ComplexMatrix c(a.rows(), b.rows());
    if (!c.empty())
        kernels::active().gemm_adjoint(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.rows());
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            t(c, r) = std::conj(a(r, c));
    return t;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            t(c, r) = a(r, c);
    return t;
}

ComplexMatrix scale_add(double alpha, const ComplexMatrix& x, double beta, const ComplexMatrix& y) {
    require_same_shape(x, y, "scale_add");
    ComplexMatrix out(x.rows(), x.cols());
    if (!out.empty())
        kernels::active().scale_add(alpha, x.data(), beta, y.data(), out.data(), x.size());
    return out;
}

std::vector<double> row_norms_sq(const ComplexMatrix& a) {
    std::vector<double> out(a.rows());
    if (!a.empty())
        kernels::active().row_norms_sq(a.data(), out.data(), a.rows(), a.cols());
    return out;
}

double frobenius_norm_sq(const ComplexMatrix& a) {
    double total = 0.0;
    for (double r : row_norms_sq(a))
        total += r;
    return total;
}

double frobenius_norm(const ComplexMatrix& a) { return std::sqrt(frobenius_norm_sq(a)); }

cplx trace(const ComplexMatrix& a) {
    if (!a.is_square())
        throw ContractError("trace: matrix is " + shape(a));
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        t += a(i, i);
    return t;
}

bool all_finite(const ComplexMatrix& a) noexcept {
    for (const cplx& v : a.entries())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

bool is_diagonal(const ComplexMatrix& a) noexcept {
    if (!a.is_square())
        return false;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (r != c && a(r, c) != cplx{})
                return false;
    return true;
}

ComplexMatrix column_block(const ComplexMatrix& a, std::size_t first, std::size_t count) {
    if (first + count > a.cols())
        throw ContractError("column_block: columns [" + std::to_string(first) + ", " +
                            std::to_string(first + count) + ") out of range for " + shape(a));
    ComplexMatrix out(a.rows(), count);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < count; ++c)
            out(r, c) = a(r, first + c);
    return out;
}

ComplexMatrix select_rows(const ComplexMatrix& a, std::span<const std::size_t> indices) {
    ComplexMatrix out(indices.size(), a.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= a.rows())
            throw ContractError("select_rows: row " + std::to_string(indices[i]) + " out of range for " + shape(a));
        auto src = a.row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::span<const std::size_t> indices) {
    if (!a.is_square())
        throw ContractError("principal_submatrix: matrix is " + shape(a));
    ComplexMatrix out(indices.size(), indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = 0; j < indices.size(); ++j)
            out(i, j) = a(indices[i], indices[j]);
    return out;
}

} // namespace fdmimo
