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


// Matrix pencils of subspaces of C^2 (x) C^N.
//
// A basis vector |0>|a_i> + |1>|b_i> of V is orthogonal to the product
// vector (z|0> + w|1>) (x) f exactly when row i of C(z,w) = A z + B w kills f,
// with A = conj(a), B = conj(b). The fibers ker C(z,w) therefore carry all
// product vectors of V^perp.
//
// Polynomial solutions are stored by coefficient: coeffs[t] multiplies
// z^t w^(m - t).

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pptlab/bipartite.hpp"
#include "pptlab/matrix.hpp"
#include "pptlab/numerics.hpp"

namespace pptlab {

struct ProjectivePoint {
    cplx z;
    cplx w;
};

/// Unit-sphere representative with w real and nonnegative (z = 1 when w = 0).
ProjectivePoint canonical_point(cplx z, cplx w);

struct PolySolution {
    std::size_t degree = 0;
    std::vector<CVector> coeffs;  // degree + 1 vectors in C^N

    CVector evaluate(cplx z, cplx w) const;
};

struct Staircase {
    std::size_t generic_rank = 0;
    std::vector<std::size_t> kernel_dims;  // n_d for d = 0, 1, ...
    std::vector<std::size_t> indices;      // recovered minimal indices, nondecreasing
};

struct PencilForm {
    std::size_t k = 0;
    std::size_t n = 0;
    Matrix a;  // k x n
    Matrix b;  // k x n
    double tau = kDefaultTau;
    bool ces = false;

    // Filled when ces holds.
    std::vector<std::size_t> minimal_indices;
    std::vector<PolySolution> solutions;
    Matrix coordinate_change;  // columns: stacked solution coefficients; Q^{-1} g_i is monomial
    std::vector<std::size_t> u;
    std::vector<std::size_t> v;
    std::size_t delta = 0;

    Matrix at(cplx z, cplx w) const;
};

struct BundleFiber {
    ProjectivePoint point;
    Matrix basis;  // orthonormal columns spanning ker C(z, w)
};

/// Basis vectors of span{|0,i> + |1,i+1> : i < k} in C^2 (x) C^N.
std::vector<CVector> ces_standard(std::size_t n, std::size_t k);

/// Builds the pencil of span(basis). Throws ContractViolation for a dependent
/// basis or k >= N. When the subspace is completely entangled, also fills the
/// minimal indices, basic solutions and monomial exponents.
PencilForm pencil_from_subspace(std::span<const CVector> basis, std::size_t n, double tau = kDefaultTau);

/// Degree staircase of polynomial kernel dimensions.
Staircase pencil_staircase(const Matrix& a, const Matrix& b, double tau = kDefaultTau);

/// Throws NumericalDegeneracy (with the staircase dimensions) unless the
/// indices number N - k and sum to k.
std::vector<std::size_t> minimal_indices(const PencilForm& p);

/// Minimal polynomial basis of ker C(z, w), chosen greedily degree by degree.
std::vector<PolySolution> basic_solutions(const PencilForm& p);

BundleFiber fiber_at(const PencilForm& p, cplx z, cplx w);

/// (z, w) (x) sum_i z^u_i w^v_i g_i(z, w), normalized. Requires ces.
ProductVector bundle_member(const PencilForm& p, cplx z, cplx w);

/// 2N - k product vectors spanning V^perp.
std::vector<ProductVector> spanning_product_vectors(const PencilForm& p);

/// Bundle members at `count` Fibonacci points of the Bloch sphere.
std::vector<ProductVector> bundle_sample(const PencilForm& p, std::size_t count);

/// Orthonormal basis of the orthogonal complement of span(basis) in C^dim.
Matrix orthogonal_complement(std::span<const CVector> basis, std::size_t dim, double tau = kDefaultTau);

struct Subspace3x3Result {
    bool non_generic = false;
    std::vector<ProductVector> vectors;
};

/// All product vectors (up to scalar) in a 4- or 5-dimensional subspace W of
/// C^3 (x) C^3 given by an orthonormal basis. Infinite families are reported
/// through `non_generic`.
Subspace3x3Result product_vectors_in_subspace_3x3(std::span<const CVector> basis, std::uint64_t seed = 7);

}  // namespace pptlab
