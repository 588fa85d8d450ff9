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


// Product vectors a (x) b inside a subspace W of C^3 (x) C^3.
//
// With h_l spanning W^perp, membership reads M(a) b = 0 where
// M(a)_{lj} = sum_i conj(h_l[3i + j]) a_i. A solution exists iff every 3x3
// minor of M(a) vanishes. Two minors F, G are cubics on the projective plane;
// their Sylvester resultant is a univariate polynomial of degree at most 9
// whose roots contain every solution.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pptlab/errors.hpp"
#include "pptlab/pencil.hpp"
#include "pptlab/random.hpp"

namespace pptlab {
namespace {

cplx det3(const cplx m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

cplx determinant(Matrix m) {
    const std::size_t n = m.rows();
    cplx det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(m(r, c)) > std::abs(m(piv, c))) {
                piv = r;
            }
        }
        if (m(piv, c) == cplx{}) {
            return 0.0;
        }
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(c, j));
            }
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const cplx f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) {
                m(r, j) -= f * m(c, j);
            }
        }
    }
    return det;
}

// Coefficients (ascending) of a polynomial of degree < count from its values
// at the count-th roots of unity scaled by radius.
std::vector<cplx> interpolate_on_circle(const std::vector<cplx>& values, double radius) {
    const std::size_t count = values.size();
    std::vector<cplx> coeffs(count);
    for (std::size_t j = 0; j < count; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(count);
            s += values[k] * std::polar(1.0, angle);
        }
        coeffs[j] = s / static_cast<double>(count) / std::pow(radius, static_cast<double>(j));
    }
    return coeffs;
}

class MinorSystem {
   public:
    MinorSystem(const Matrix& perp, Rng& rng) : perp_(perp), rows_(perp.cols()) {
        coords_ = rng.unitary(3);
        mix_ = rng.unitary(rows_);
    }

    std::size_t rows() const { return rows_; }

    CVector point(cplx x, cplx y) const {
        const CVector local{1.0, x, y};
        return coords_ * local;
    }

    // M(a) in the original coordinates.
    Matrix pencil(std::span<const cplx> a) const {
        Matrix m(rows_, 3);
        for (std::size_t l = 0; l < rows_; ++l) {
            for (std::size_t j = 0; j < 3; ++j) {
                cplx s = 0.0;
                for (std::size_t i = 0; i < 3; ++i) {
                    s += std::conj(perp_(3 * i + j, l)) * a[i];
                }
                m(l, j) = s;
            }
        }
        return m;
    }

    // Minor of the mixed pencil on rows {0, 1, third}.
    cplx minor(std::size_t third, cplx x, cplx y) const {
        const CVector a = point(x, y);
        const Matrix m = mix_ * pencil(a);
        const std::size_t rs[3] = {0, 1, third};
        cplx sub[3][3];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                sub[r][c] = m(rs[r], static_cast<std::size_t>(c));
            }
        }
        return det3(sub);
    }

    // Coefficients (ascending in the eliminated variable) of a minor with the
    // other variable fixed. `swap` exchanges the roles of x and y.
    std::vector<cplx> cubic_in(std::size_t third, cplx fixed, bool swap) const {
        std::vector<cplx> vals(4);
        for (std::size_t k = 0; k < 4; ++k) {
            const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / 4.0);
            vals[k] = swap ? minor(third, t, fixed) : minor(third, fixed, t);
        }
        return interpolate_on_circle(vals, 1.0);
    }

   private:
    Matrix perp_;
    std::size_t rows_;
    Matrix coords_;
    Matrix mix_;
};

double coeff_scale(const std::vector<cplx>& c) {
    double s = 0.0;
    for (const auto& x : c) {
        s = std::max(s, std::abs(x));
    }
    return s;
}

cplx sylvester_resultant(const std::vector<cplx>& f, const std::vector<cplx>& g) {
    // f, g ascending cubics; Sylvester matrix in descending order.
    Matrix s(6, 6);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t j = 0; j < 4; ++j) {
            s(r, r + j) = f[3 - j];
            s(r + 3, r + j) = g[3 - j];
        }
    }
    return determinant(s);
}

std::vector<cplx> trim_descending(std::vector<cplx> ascending, double rel) {
    const double scale = coeff_scale(ascending);
    while (!ascending.empty() && std::abs(ascending.back()) <= rel * scale) {
        ascending.pop_back();
    }
    return {ascending.rbegin(), ascending.rend()};
}

double membership(const Matrix& perp, const ProductVector& pv) {
    const CVector v = pv.tensor();
    double s = 0.0;
    for (std::size_t l = 0; l < perp.cols(); ++l) {
        s += std::norm(dot(perp.col(l), v));
    }
    return std::sqrt(s) / norm(v);
}

// Gauss-Newton on the bilinear equations h_l^dagger (a (x) b) = 0 with the
// scale of each factor pinned by <a0|a> = <b0|b> = 1.
ProductVector polish(const Matrix& perp, ProductVector pv) {
    const std::size_t c = perp.cols();
    for (int it = 0; it < 8; ++it) {
        const CVector a0 = normalized(pv.a);
        const CVector b0 = normalized(pv.b);
        pv.a = scaled(pv.a, 1.0 / dot(a0, pv.a));
        pv.b = scaled(pv.b, 1.0 / dot(b0, pv.b));
        Matrix jac(c + 2, 6);
        CVector rhs(c + 2);
        for (std::size_t l = 0; l < c; ++l) {
            cplx e = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    const cplx h = std::conj(perp(3 * i + j, l));
                    e += h * pv.a[i] * pv.b[j];
                    jac(l, i) += h * pv.b[j];
                    jac(l, 3 + j) += h * pv.a[i];
                }
            }
            rhs[l] = -e;
        }
        for (std::size_t i = 0; i < 3; ++i) {
            jac(c, i) = std::conj(a0[i]);
            jac(c + 1, 3 + i) = std::conj(b0[i]);
        }
        const double before = membership(perp, pv);
        if (before < 1e-15) {
            break;
        }
        const CVector step = solve_least_squares(jac, rhs, 1e-12);
        ProductVector next = pv;
        for (std::size_t i = 0; i < 3; ++i) {
            next.a[i] += step[i];
            next.b[i] += step[3 + i];
        }
        if (!(membership(perp, next) < before)) {
            break;
        }
        pv = std::move(next);
    }
    return {normalized(pv.a), normalized(pv.b)};
}

bool same_ray(const CVector& x, const CVector& y) {
    return std::abs(dot(x, y)) / (norm(x) * norm(y)) > 1.0 - 1e-8;
}

}  // namespace

Subspace3x3Result product_vectors_in_subspace_3x3(std::span<const CVector> basis, std::uint64_t seed) {
    if (basis.size() != 4 && basis.size() != 5) {
        throw ContractViolation("product_vectors_in_subspace_3x3: subspace dimension must be 4 or 5");
    }
    for (const auto& v : basis) {
        if (v.size() != 9) {
            throw ContractViolation("product_vectors_in_subspace_3x3: vectors must lie in C^3 (x) C^3");
        }
    }
    const Matrix w = Matrix::from_columns(basis, 9);
    if (max_abs_diff(w.adjoint() * w, Matrix::identity(basis.size())) > 1e-10) {
        throw ContractViolation("product_vectors_in_subspace_3x3: basis is not orthonormal");
    }
    const Matrix perp = orthogonal_complement(basis, 9);
    Rng rng(seed);
    const MinorSystem sys(perp, rng);

    // Eliminate the variable whose cubic coefficient is larger in both minors.
    const auto lead = [&](bool swap) {
        const auto f = sys.cubic_in(2, 0.0, swap);
        const auto g = sys.cubic_in(3, 0.0, swap);
        return std::min(std::abs(f[3]) / std::max(coeff_scale(f), 1e-300),
                        std::abs(g[3]) / std::max(coeff_scale(g), 1e-300));
    };
    const bool swap = lead(true) > lead(false);

    // Resultant in the remaining variable, sampled on a circle.
    constexpr std::size_t kSamples = 16;
    std::vector<cplx> values(kSamples);
    double scale = 0.0;
    for (std::size_t k = 0; k < kSamples; ++k) {
        const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / kSamples);
        const auto f = sys.cubic_in(2, t, swap);
        const auto g = sys.cubic_in(3, t, swap);
        values[k] = sylvester_resultant(f, g);
        scale = std::max(scale, std::pow(coeff_scale(f) * coeff_scale(g), 3.0));
    }
    const auto res_coeffs = interpolate_on_circle(values, 1.0);
    Subspace3x3Result out;
    if (coeff_scale(res_coeffs) <= 1e-10 * scale) {
        out.non_generic = true;
        return out;
    }
    const auto res = trim_descending(res_coeffs, 1e-11);

    std::vector<ProductVector> candidates;
    for (const cplx t : poly_roots(res)) {
        const auto f = sys.cubic_in(2, t, swap);
        const auto cubic = trim_descending(f, 1e-12);
        if (cubic.size() < 2) {
            continue;
        }
        for (const cplx s : poly_roots(cubic)) {
            const CVector a = swap ? sys.point(s, t) : sys.point(t, s);
            const Matrix m = sys.pencil(a);
            const Svd d = svd(m);
            if (d.values.front() == 0.0 || d.values[2] > 1e-7 * d.values.front()) {
                continue;
            }
            candidates.push_back({normalized(a), d.v.col(2)});
        }
    }

    for (auto& pv : candidates) {
        pv = polish(perp, pv);
        if (membership(perp, pv) > 1e-8) {
            continue;
        }
        const CVector v = pv.tensor();
        const bool seen = std::any_of(out.vectors.begin(), out.vectors.end(),
                                      [&](const ProductVector& q) { return same_ray(q.tensor(), v); });
        if (!seen) {
            out.vectors.push_back(std::move(pv));
        }
    }
    return out;
}

}  // namespace pptlab
