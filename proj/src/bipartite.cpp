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


#include "pptlab/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pptlab/errors.hpp"

namespace pptlab {

BipartiteState::BipartiteState(std::size_t m, std::size_t n, Matrix rho)
    : dim_a(m), dim_b(n), matrix(std::move(rho)) {
    if (m == 0 || n == 0) {
        throw ContractViolation("BipartiteState: zero local dimension");
    }
    if (matrix.rows() != m * n || matrix.cols() != m * n) {
        throw ContractViolation("BipartiteState: matrix size does not match dims");
    }
    if (!matrix.all_finite()) {
        throw ContractViolation("BipartiteState: non-finite entries");
    }
    if (!matrix.is_hermitian(1e-12)) {
        throw ContractViolation("BipartiteState: matrix is not Hermitian");
    }
    matrix = matrix.hermitian_part();
}

void check_product_vector(const ProductVector& pv) {
    if (pv.a.empty() || pv.b.empty() || norm(pv.a) == 0.0 || norm(pv.b) == 0.0) {
        throw ContractViolation("product vector has a zero factor");
    }
}

BipartiteState partial_transpose(const BipartiteState& rho) {
    const std::size_t m = rho.dim_a;
    const std::size_t n = rho.dim_b;
    Matrix out(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    out(i * n + k, j * n + l) = rho.matrix(j * n + k, i * n + l);
                }
            }
        }
    }
    return BipartiteState(m, n, std::move(out));
}

Matrix partial_trace(const BipartiteState& rho, Side side) {
    const std::size_t m = rho.dim_a;
    const std::size_t n = rho.dim_b;
    if (side == Side::A) {
        // rho_A = Tr_B rho
        Matrix out(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    out(i, j) += rho.matrix(i * n + k, j * n + k);
                }
            }
        }
        return out;
    }
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            for (std::size_t i = 0; i < m; ++i) {
                out(k, l) += rho.matrix(i * n + k, i * n + l);
            }
        }
    }
    return out;
}

Birank birank(const BipartiteState& rho, double tau) {
    return {rank_tol(rho.matrix, tau), rank_tol(partial_transpose(rho).matrix, tau)};
}

Classification classify(const BipartiteState& rho, double tau) {
    const Spectrum sp = eig_hermitian(partial_transpose(rho).matrix);
    const double cut = -tau * std::abs(rho.trace());
    Classification c;
    c.tau_used = tau;
    c.min_eigenvalue = sp.values.empty() ? 0.0 : sp.values.front();
    c.negative_count = static_cast<std::size_t>(
        std::count_if(sp.values.begin(), sp.values.end(), [cut](double v) { return v < cut; }));
    c.verdict = c.negative_count == 0 ? Verdict::PPT : Verdict::NPT;
    return c;
}

std::pair<std::size_t, std::size_t> local_ranks(const BipartiteState& rho, double tau) {
    return {rank_tol(partial_trace(rho, Side::A), tau), rank_tol(partial_trace(rho, Side::B), tau)};
}

bool is_psd(const Matrix& h, double tau) {
    if (h.empty()) {
        return true;
    }
    const Spectrum sp = eig_hermitian(h);
    const double scale = std::max(std::abs(h.trace().real()), std::abs(sp.values.back()));
    return sp.values.front() >= -tau * scale;
}

namespace {

double condition_number(const Matrix& m) {
    const auto s = singular_values(m);
    if (s.empty() || s.back() == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return s.front() / s.back();
}

}  // namespace

IloResult apply_ilo(const BipartiteState& rho, const Matrix& a, const Matrix& b) {
    if (a.rows() != rho.dim_a || a.cols() != rho.dim_a || b.rows() != rho.dim_b || b.cols() != rho.dim_b) {
        throw ContractViolation("apply_ilo: operator shapes do not match the state");
    }
    IloResult out;
    out.cond_a = condition_number(a);
    out.cond_b = condition_number(b);
    if (!(out.cond_a < 1e12) || !(out.cond_b < 1e12)) {
        throw DomainError("apply_ilo: local operator is singular");
    }
    const Matrix v = kron(a, b);
    out.state = BipartiteState(rho.dim_a, rho.dim_b, (v * rho.matrix * v.adjoint()).hermitian_part());
    return out;
}

BipartiteState mixture(std::span<const std::pair<double, ProductVector>> terms) {
    if (terms.empty()) {
        throw ContractViolation("mixture: no terms");
    }
    const std::size_t m = terms.front().second.a.size();
    const std::size_t n = terms.front().second.b.size();
    Matrix out(m * n, m * n);
    for (const auto& [w, pv] : terms) {
        check_product_vector(pv);
        if (!(w > 0.0)) {
            throw ContractViolation("mixture: weights must be positive");
        }
        if (pv.a.size() != m || pv.b.size() != n) {
            throw ContractViolation("mixture: inconsistent factor dimensions");
        }
        const CVector v = pv.tensor();
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                out(i, j) += w * v[i] * std::conj(v[j]);
            }
        }
    }
    return BipartiteState(m, n, out.hermitian_part());
}

BipartiteState mixture(std::span<const ProductVector> terms) {
    std::vector<std::pair<double, ProductVector>> weighted;
    weighted.reserve(terms.size());
    for (const auto& pv : terms) {
        weighted.emplace_back(1.0, pv);
    }
    return mixture(weighted);
}

BipartiteState pure_state(std::size_t m, std::size_t n, std::span<const cplx> v) {
    if (v.size() != m * n) {
        throw ContractViolation("pure_state: vector length does not match dims");
    }
    return BipartiteState(m, n, Matrix::outer(v));
}

bool verify_direct_sum(const BipartiteState& rho, std::span<const BipartiteState> parts, Side side, double tau) {
    if (parts.empty()) {
        return false;
    }
    Matrix total(rho.dim(), rho.dim());
    for (const auto& p : parts) {
        if (p.dim_a != rho.dim_a || p.dim_b != rho.dim_b) {
            throw ContractViolation("verify_direct_sum: part shape differs from rho");
        }
        total += p.matrix;
    }
    const double scale = std::max(std::abs(rho.trace()), rho.matrix.max_abs());
    if (max_abs_diff(total, rho.matrix) > tau * scale) {
        return false;
    }
    Matrix stacked;
    std::size_t rank_sum = 0;
    for (const auto& p : parts) {
        const Matrix reduced = partial_trace(p, side);
        if (reduced.max_abs() <= tau * scale) {
            return false;
        }
        const Matrix basis = range_basis(reduced, tau);
        rank_sum += basis.cols();
        stacked = hstack(stacked, basis);
    }
    return rank_tol(stacked, tau) == rank_sum;
}

double relative_distance(const BipartiteState& x, const BipartiteState& y) {
    const double scale = std::max(std::abs(x.trace()), 1e-300);
    return max_abs_diff(x.matrix, y.matrix) / scale;
}

BipartiteState operator+(const BipartiteState& x, const BipartiteState& y) {
    if (x.dim_a != y.dim_a || x.dim_b != y.dim_b) {
        throw ContractViolation("state +: shape mismatch");
    }
    return BipartiteState(x.dim_a, x.dim_b, x.matrix + y.matrix);
}

BipartiteState operator-(const BipartiteState& x, const BipartiteState& y) {
    if (x.dim_a != y.dim_a || x.dim_b != y.dim_b) {
        throw ContractViolation("state -: shape mismatch");
    }
    return BipartiteState(x.dim_a, x.dim_b, x.matrix - y.matrix);
}

BipartiteState operator*(double s, const BipartiteState& x) {
    return BipartiteState(x.dim_a, x.dim_b, cplx(s) * x.matrix);
}

}  // namespace pptlab
