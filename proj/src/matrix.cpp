// Copyright 2026 The pptlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pptlab/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "pptlab/errors.hpp"

namespace pptlab {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw ContractViolation("Matrix: entry count does not match shape");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw ContractViolation("Matrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

Matrix Matrix::from_columns(std::span<const CVector> columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        m.set_col(c, columns[c]);
    }
    return m;
}

Matrix Matrix::outer(std::span<const cplx> v) {
    Matrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return m;
}

CVector Matrix::col(std::size_t c) const {
    CVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

CVector Matrix::row(std::size_t r) const {
    return CVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_col(std::size_t c, std::span<const cplx> v) {
    if (v.size() != rows_) {
        throw ContractViolation("Matrix::set_col: length mismatch");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = v[r];
    }
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = (*this)(r, c);
        }
    }
    return m;
}

Matrix Matrix::conj() const {
    Matrix m = *this;
    for (auto& x : m.data_) {
        x = std::conj(x);
    }
    return m;
}

cplx Matrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double Matrix::hermitian_defect() const {
    if (!square()) {
        throw ContractViolation("hermitian_defect: matrix not square");
    }
    double d = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return d;
}

bool Matrix::is_hermitian(double rel_tol) const {
    return square() && hermitian_defect() <= rel_tol * std::max(1.0, max_abs());
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

Matrix Matrix::hermitian_part() const {
    Matrix m = *this;
    for (std::size_t r = 0; r < rows_; ++r) {
        m(r, r) = (*this)(r, r).real();
        for (std::size_t c = r + 1; c < cols_; ++c) {
            const cplx avg = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
            m(r, c) = avg;
            m(c, r) = std::conj(avg);
        }
    }
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw ContractViolation("Matrix +=: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += o.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw ContractViolation("Matrix -=: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= o.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& x : data_) {
        x *= s;
    }
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ContractViolation("Matrix *: inner dimension mismatch");
    }
    Matrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                m(i, j) += aik * b(k, j);
            }
        }
    }
    return m;
}

CVector operator*(const Matrix& a, std::span<const cplx> v) {
    if (a.cols() != v.size()) {
        throw ContractViolation("Matrix * vector: dimension mismatch");
    }
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += a(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return m;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.empty()) {
        return b;
    }
    if (b.empty()) {
        return a;
    }
    if (a.rows() != b.rows()) {
        throw ContractViolation("hstack: row mismatch");
    }
    Matrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            m(r, c) = a(r, c);
        }
        for (std::size_t c = 0; c < b.cols(); ++c) {
            m(r, a.cols() + c) = b(r, c);
        }
    }
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.empty()) {
        return b;
    }
    if (b.empty()) {
        return a;
    }
    if (a.cols() != b.cols()) {
        throw ContractViolation("vstack: column mismatch");
    }
    Matrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            m(r, c) = a(r, c);
        }
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            m(a.rows() + r, c) = b(r, c);
        }
    }
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ContractViolation("max_abs_diff: shape mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    }
    return d;
}

CVector kron(std::span<const cplx> a, std::span<const cplx> b) {
    CVector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        throw ContractViolation("dot: length mismatch");
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

CVector normalized(std::span<const cplx> v) {
    const double n = norm(v);
    if (n == 0.0) {
        throw DomainError("normalized: zero vector");
    }
    return scaled(v, 1.0 / n);
}

CVector conj(std::span<const cplx> v) {
    CVector out(v.begin(), v.end());
    for (auto& x : out) {
        x = std::conj(x);
    }
    return out;
}

CVector scaled(std::span<const cplx> v, cplx s) {
    CVector out(v.begin(), v.end());
    for (auto& x : out) {
        x *= s;
    }
    return out;
}

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
    if (x.size() != y.size()) {
        throw ContractViolation("axpy: length mismatch");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] += a * x[i];
    }
}

CVector basis_vector(std::size_t n, std::size_t i) {
    CVector v(n);
    v.at(i) = 1.0;
    return v;
}

}  // namespace pptlab
