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

// Dense complex linear algebra for the small matrices this library lives on:
// Hermitian eigenproblems (cyclic Jacobi), singular values (one-sided
// Jacobi), tolerance ranks, spectral pseudo-inverses, kernels,
// characteristic polynomials and polynomial roots.
//
// Every function is a pure function of its arguments.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pptlab/matrix.hpp"

namespace pptlab {

/// Default relative rank cut, applied to the largest singular value.
inline constexpr double kDefaultTau = 1e-9;

struct Spectrum {
    std::vector<double> values;  // ascending
    Matrix vectors;              // orthonormal columns, vectors.col(i) <-> values[i]
};

/// Thin singular value decomposition M = U diag(values) V^dagger.
/// `values` are descending; `v` is a full n x n unitary; `u` holds the left
/// vectors for the nonzero singular values (columns beyond that are zero).
struct Svd {
    std::vector<double> values;
    Matrix u;
    Matrix v;
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Throws ContractViolation for non-square or non-Hermitian input
/// (relative defect above 1e-12).
Spectrum eig_hermitian(const Matrix& h);

/// One-sided (Hestenes) Jacobi SVD. Works for any shape.
Svd svd(const Matrix& m);

std::vector<double> singular_values(const Matrix& m);

/// Number of singular values strictly above tau * (largest singular value).
std::size_t rank_tol(const Matrix& m, double tau = kDefaultTau);

/// Spectral pseudo-inverse of a Hermitian positive semidefinite matrix.
/// Eigenvalues <= tau * lambda_max are treated as exact zeros.
/// Throws DomainError when an eigenvalue is below -tau * tr(H).
Matrix pseudo_inverse(const Matrix& h, double tau = kDefaultTau);

/// Orthonormal kernel basis (as columns) of any matrix; column count is
/// cols - rank_tol(m, tau).
Matrix kernel_basis(const Matrix& m, double tau = kDefaultTau);

/// Orthonormal basis (as columns) of the column space of m.
Matrix range_basis(const Matrix& m, double tau = kDefaultTau);

/// ||v - P v|| / ||v|| where P projects onto the span of the orthonormal
/// columns of `basis`. Returns 0 for the zero vector.
double projection_residual(const Matrix& basis, std::span<const cplx> v);

/// Minimum-norm least-squares solution of m x = b.
CVector solve_least_squares(const Matrix& m, std::span<const cplx> b, double tau = 1e-13);

struct CharPoly {
    std::vector<cplx> coefficients;  // monic, descending powers
    std::vector<long long> nearest_integers;
    double max_rounding_error = 0.0;  // max |c - round(c)| over all coefficients
    bool integral = false;            // every rounding error below 1e-4
};

/// Characteristic polynomial det(tI - M) by the Faddeev-LeVerrier recurrence.
/// Dimension is capped at 16.
CharPoly char_poly(const Matrix& m);

/// Horner evaluation; coefficients in descending powers.
cplx poly_eval(std::span<const cplx> coeffs, cplx t);

/// Monic polynomial with the given roots, descending powers.
std::vector<cplx> poly_from_roots(std::span<const cplx> roots);

/// Roots of a polynomial given in descending powers, via the eigenvalues of
/// its companion matrix (shifted Hessenberg QR) followed by Newton polishing.
/// The leading coefficient must be nonzero and the degree at most 32.
std::vector<cplx> poly_roots(std::span<const cplx> coeffs);

/// Eigenvalues of a general square matrix already in upper Hessenberg form.
std::vector<cplx> hessenberg_eigenvalues(Matrix h);

}  // namespace pptlab
