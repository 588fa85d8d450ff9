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


// Bipartite states on C^M (x) C^N. Basis |i>_A |j>_B sits at row i*N + j.
// States are unnormalized throughout.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pptlab/matrix.hpp"
#include "pptlab/numerics.hpp"

namespace pptlab {

enum class Side { A, B };

struct BipartiteState {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    Matrix matrix;

    BipartiteState() = default;
    /// Validates shape and Hermiticity (relative defect 1e-12).
    BipartiteState(std::size_t m, std::size_t n, Matrix rho);

    std::size_t dim() const { return dim_a * dim_b; }
    double trace() const { return matrix.trace().real(); }
};

struct ProductVector {
    CVector a;
    CVector b;

    /// a (x) b
    CVector tensor() const { return kron(a, b); }
    /// a* (x) b
    CVector partial_conjugate() const { return kron(conj(a), b); }
};

/// Throws ContractViolation if either factor is empty or zero.
void check_product_vector(const ProductVector& pv);

struct Birank {
    std::size_t r = 0;
    std::size_t s = 0;
    friend bool operator==(const Birank&, const Birank&) = default;
};

enum class Verdict { PPT, NPT };

struct Classification {
    Verdict verdict = Verdict::PPT;
    std::size_t negative_count = 0;
    double min_eigenvalue = 0.0;
    double tau_used = kDefaultTau;
};

BipartiteState partial_transpose(const BipartiteState& rho);
Matrix partial_trace(const BipartiteState& rho, Side side);

Birank birank(const BipartiteState& rho, double tau = kDefaultTau);
Classification classify(const BipartiteState& rho, double tau = kDefaultTau);
std::pair<std::size_t, std::size_t> local_ranks(const BipartiteState& rho, double tau = kDefaultTau);

/// Smallest eigenvalue of rho relative to its trace; >= -tau means PSD.
bool is_psd(const Matrix& h, double tau = kDefaultTau);

struct IloResult {
    BipartiteState state;
    double cond_a = 1.0;
    double cond_b = 1.0;
};

/// (A (x) B) rho (A (x) B)^dagger. Throws DomainError for singular A or B.
IloResult apply_ilo(const BipartiteState& rho, const Matrix& a, const Matrix& b);

/// Sum of w_i |a_i, b_i><a_i, b_i|. Factor dimensions fix the state shape.
BipartiteState mixture(std::span<const std::pair<double, ProductVector>> terms);
/// Unit weights.
BipartiteState mixture(std::span<const ProductVector> terms);

/// |v><v| as a state of the given shape.
BipartiteState pure_state(std::size_t m, std::size_t n, std::span<const cplx> v);

/// Checks a claimed direct-sum decomposition on the named side.
bool verify_direct_sum(const BipartiteState& rho, std::span<const BipartiteState> parts, Side side,
                       double tau = kDefaultTau);

/// Trace-relative max-abs distance between two states of equal shape.
double relative_distance(const BipartiteState& x, const BipartiteState& y);

BipartiteState operator+(const BipartiteState& x, const BipartiteState& y);
BipartiteState operator-(const BipartiteState& x, const BipartiteState& y);
BipartiteState operator*(double s, const BipartiteState& x);

}  // namespace pptlab
