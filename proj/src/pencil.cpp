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


#include "pptlab/pencil.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "pptlab/errors.hpp"
#include "pptlab/random.hpp"

namespace pptlab {
namespace {

std::string describe(const Staircase& s) {
    std::ostringstream os;
    os << "generic rank " << s.generic_rank << ", kernel dims [";
    for (std::size_t i = 0; i < s.kernel_dims.size(); ++i) {
        os << (i ? ", " : "") << s.kernel_dims[i];
    }
    os << "]";
    return os.str();
}

// Block Toeplitz matrix whose kernel holds the degree-d polynomial solutions:
// row block s collects the coefficient of z^s w^(d+1-s), A f_{s-1} + B f_s.
Matrix convolution_matrix(const Matrix& a, const Matrix& b, std::size_t d) {
    const std::size_t k = a.rows();
    const std::size_t n = a.cols();
    Matrix t((d + 2) * k, (d + 1) * n);
    for (std::size_t s = 0; s <= d + 1; ++s) {
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (s >= 1) {
                    t(s * k + r, (s - 1) * n + c) = a(r, c);
                }
                if (s <= d) {
                    t(s * k + r, s * n + c) = b(r, c);
                }
            }
        }
    }
    return t;
}

PolySolution unstack(const CVector& v, std::size_t d, std::size_t n) {
    PolySolution g;
    g.degree = d;
    for (std::size_t t = 0; t <= d; ++t) {
        g.coeffs.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(t * n),
                              v.begin() + static_cast<std::ptrdiff_t>((t + 1) * n));
    }
    return g;
}

cplx ipow(cplx x, std::size_t e) {
    cplx r = 1.0;
    for (std::size_t i = 0; i < e; ++i) {
        r *= x;
    }
    return r;
}

}  // namespace

ProjectivePoint canonical_point(cplx z, cplx w) {
    const double len = std::hypot(std::abs(z), std::abs(w));
    if (len == 0.0) {
        throw ContractViolation("projective point (0, 0)");
    }
    if (std::abs(w) == 0.0) {
        return {1.0, 0.0};
    }
    const cplx phase = std::conj(w) / std::abs(w);
    return {z * phase / len, std::abs(w) / len};
}

CVector PolySolution::evaluate(cplx z, cplx w) const {
    CVector out(coeffs.empty() ? 0 : coeffs.front().size());
    for (std::size_t t = 0; t <= degree; ++t) {
        axpy(ipow(z, t) * ipow(w, degree - t), coeffs[t], out);
    }
    return out;
}

Matrix PencilForm::at(cplx z, cplx w) const {
    Matrix c = a;
    c *= z;
    Matrix bw = b;
    bw *= w;
    return c + bw;
}

std::vector<CVector> ces_standard(std::size_t n, std::size_t k) {
    if (k >= n) {
        throw ContractViolation("ces_standard: need k < N");
    }
    std::vector<CVector> out;
    for (std::size_t i = 0; i < k; ++i) {
        CVector v(2 * n);
        v[i] = 1.0;
        v[n + i + 1] = 1.0;
        out.push_back(v);
    }
    return out;
}

Staircase pencil_staircase(const Matrix& a, const Matrix& b, double tau) {
    const std::size_t k = a.rows();
    const std::size_t n = a.cols();
    Staircase s;
    if (k > 0) {
        const cplx pts[][2] = {{{0.37, 0.91}, {0.58, 0.0}},
                               {{-0.83, 0.12}, {0.21, 0.44}},
                               {{0.05, -0.66}, {0.97, -0.31}},
                               {{1.3, 0.2}, {-0.4, 0.7}}};
        for (const auto& p : pts) {
            Matrix c = a;
            c *= p[0];
            Matrix bw = b;
            bw *= p[1];
            s.generic_rank = std::max(s.generic_rank, rank_tol(c + bw, tau));
        }
    }
    const std::size_t blocks = n - s.generic_rank;
    std::size_t prev_dim = 0;
    std::size_t prev_count = 0;
    for (std::size_t d = 0; d <= k + 1; ++d) {
        const std::size_t dim =
            k == 0 ? (d + 1) * n : (d + 1) * n - rank_tol(convolution_matrix(a, b, d), tau);
        s.kernel_dims.push_back(dim);
        const std::size_t count = dim - prev_dim;  // #{m_i <= d}
        if (count < prev_count) {
            break;
        }
        for (std::size_t i = prev_count; i < count; ++i) {
            s.indices.push_back(d);
        }
        prev_dim = dim;
        prev_count = count;
        if (count >= blocks) {
            break;
        }
    }
    return s;
}

std::vector<std::size_t> minimal_indices(const PencilForm& p) {
    const Staircase s = pencil_staircase(p.a, p.b, p.tau);
    const std::size_t sum = std::accumulate(s.indices.begin(), s.indices.end(), std::size_t{0});
    if (s.indices.size() != p.n - p.k || sum != p.k) {
        throw NumericalDegeneracy("minimal_indices: staircase inconsistent with sum k = " + std::to_string(p.k) +
                                  " (" + describe(s) + ")");
    }
    return s.indices;
}

std::vector<PolySolution> basic_solutions(const PencilForm& p) {
    const std::vector<std::size_t> idx = minimal_indices(p);
    const std::size_t n = p.n;
    std::vector<PolySolution> out;
    std::size_t pos = 0;
    for (std::size_t d = 0; pos < idx.size(); ++d) {
        std::size_t wanted = 0;
        while (pos + wanted < idx.size() && idx[pos + wanted] == d) {
            ++wanted;
        }
        if (wanted == 0) {
            continue;
        }
        const Matrix ker = p.k == 0 ? Matrix::identity(n) : kernel_basis(convolution_matrix(p.a, p.b, d), p.tau);
        // Monomial multiples of the lower-degree solutions.
        std::vector<CVector> lower;
        for (const auto& g : out) {
            for (std::size_t shift = 0; shift + g.degree <= d; ++shift) {
                CVector v((d + 1) * n);
                for (std::size_t t = 0; t <= g.degree; ++t) {
                    for (std::size_t j = 0; j < n; ++j) {
                        v[(shift + t) * n + j] = g.coeffs[t][j];
                    }
                }
                lower.push_back(v);
            }
        }
        Matrix fresh = ker;
        if (!lower.empty()) {
            const Matrix q = range_basis(Matrix::from_columns(lower, (d + 1) * n), p.tau);
            fresh = ker - q * (q.adjoint() * ker);
        }
        const Matrix chosen = range_basis(fresh, 1e-6);
        if (chosen.cols() < wanted) {
            throw NumericalDegeneracy("basic_solutions: too few new solutions at degree " + std::to_string(d));
        }
        for (std::size_t c = 0; c < wanted; ++c) {
            out.push_back(unstack(chosen.col(c), d, n));
        }
        pos += wanted;
    }
    return out;
}

PencilForm pencil_from_subspace(std::span<const CVector> basis, std::size_t n, double tau) {
    const std::size_t k = basis.size();
    if (n == 0 || k >= n) {
        throw ContractViolation("pencil_from_subspace: need dim V = k < N");
    }
    for (const auto& v : basis) {
        if (v.size() != 2 * n) {
            throw ContractViolation("pencil_from_subspace: basis vectors must lie in C^2 (x) C^N");
        }
    }
    if (k > 0 && rank_tol(Matrix::from_columns(basis, 2 * n), tau) != k) {
        throw ContractViolation("pencil_from_subspace: basis is linearly dependent");
    }
    PencilForm p;
    p.k = k;
    p.n = n;
    p.tau = tau;
    p.a = Matrix(k, n);
    p.b = Matrix(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            p.a(i, j) = std::conj(basis[i][j]);
            p.b(i, j) = std::conj(basis[i][n + j]);
        }
    }
    const Staircase s = pencil_staircase(p.a, p.b, tau);
    const std::size_t sum = std::accumulate(s.indices.begin(), s.indices.end(), std::size_t{0});
    p.ces = s.generic_rank == k && s.indices.size() == n - k && sum == k;
    if (!p.ces) {
        return p;
    }
    p.minimal_indices = s.indices;
    p.solutions = basic_solutions(p);

    std::vector<CVector> cols;
    for (const auto& g : p.solutions) {
        cols.insert(cols.end(), g.coeffs.begin(), g.coeffs.end());
    }
    p.coordinate_change = Matrix::from_columns(cols, n);
    if (rank_tol(p.coordinate_change, 1e-8) != n) {
        throw NumericalDegeneracy("pencil_from_subspace: solution coefficients are not a basis of C^N");
    }

    p.delta = 2 * n - k - 2;
    std::size_t u = 0;
    for (const auto& g : p.solutions) {
        p.u.push_back(u);
        p.v.push_back(p.delta - g.degree - u);
        u += g.degree + 2;
    }
    return p;
}

BundleFiber fiber_at(const PencilForm& p, cplx z, cplx w) {
    BundleFiber f;
    f.point = canonical_point(z, w);
    f.basis = p.k == 0 ? Matrix::identity(p.n) : kernel_basis(p.at(f.point.z, f.point.w), p.tau);
    return f;
}

ProductVector bundle_member(const PencilForm& p, cplx z, cplx w) {
    if (!p.ces) {
        throw ContractViolation("bundle_member: pencil is not completely entangled");
    }
    const ProjectivePoint pt = canonical_point(z, w);
    CVector f(p.n);
    for (std::size_t i = 0; i < p.solutions.size(); ++i) {
        axpy(ipow(pt.z, p.u[i]) * ipow(pt.w, p.v[i]), p.solutions[i].evaluate(pt.z, pt.w), f);
    }
    return {{pt.z, pt.w}, normalized(f)};
}

std::vector<ProductVector> spanning_product_vectors(const PencilForm& p) {
    if (!p.ces) {
        throw ContractViolation("spanning_product_vectors: pencil is not completely entangled");
    }
    const std::size_t count = 2 * p.n - p.k;
    const double cmax = std::max({1.0, p.a.max_abs(), p.b.max_abs()});
    for (const double offset : {0.0, 0.3, 0.71, 1.13}) {
        std::vector<ProductVector> out;
        std::vector<CVector> tensors;
        bool inside = true;
        for (std::size_t j = 0; j < count; ++j) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count) + offset;
            ProductVector pv = bundle_member(p, std::polar(1.0, angle), 1.0);
            if (p.k > 0 && norm(p.at(pv.a[0], pv.a[1]) * pv.b) > 1e-9 * cmax) {
                inside = false;
            }
            tensors.push_back(pv.tensor());
            out.push_back(std::move(pv));
        }
        if (inside && rank_tol(Matrix::from_columns(tensors, 2 * p.n)) == count) {
            return out;
        }
    }
    throw NumericalDegeneracy("spanning_product_vectors: evaluations do not span V^perp");
}

std::vector<ProductVector> bundle_sample(const PencilForm& p, std::size_t count) {
    std::vector<ProductVector> out;
    out.reserve(count);
    for (const auto& q : fibonacci_qubits(count)) {
        out.push_back(bundle_member(p, q[0], q[1]));
    }
    return out;
}

Matrix orthogonal_complement(std::span<const CVector> basis, std::size_t dim, double tau) {
    if (basis.empty()) {
        return Matrix::identity(dim);
    }
    return kernel_basis(Matrix::from_columns(basis, dim).adjoint(), tau);
}

}  // namespace pptlab
