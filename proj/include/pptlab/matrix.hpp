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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pptlab {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense complex matrix, row-major. Small by design (tens of rows), so all
/// arithmetic is plain loops and value semantics.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix diagonal(std::span<const double> values);
    static Matrix from_columns(std::span<const CVector> columns, std::size_t rows);
    /// |v><v|
    static Matrix outer(std::span<const cplx> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const cplx> data() const { return data_; }

    CVector col(std::size_t c) const;
    CVector row(std::size_t r) const;
    void set_col(std::size_t c, std::span<const cplx> v);

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conj() const;

    cplx trace() const;
    double max_abs() const;
    /// max |H - H^dagger|
    double hermitian_defect() const;
    bool is_hermitian(double rel_tol = 1e-12) const;
    bool all_finite() const;

    /// Average with the adjoint. Removes round-off asymmetry.
    Matrix hermitian_part() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);

    friend bool operator==(const Matrix&, const Matrix&) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
CVector operator*(const Matrix& a, std::span<const cplx> v);

Matrix kron(const Matrix& a, const Matrix& b);
/// Horizontal concatenation of matrices with equal row counts.
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Vector helpers.
CVector kron(std::span<const cplx> a, std::span<const cplx> b);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);  // <a|b>, conjugate-linear in a
double norm(std::span<const cplx> v);
CVector normalized(std::span<const cplx> v);
CVector conj(std::span<const cplx> v);
CVector scaled(std::span<const cplx> v, cplx s);
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y);
CVector basis_vector(std::size_t n, std::size_t i);

}  // namespace pptlab
