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

#include "pptlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pptlab/errors.hpp"

namespace pptlab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

// Real Jacobi parameters (c, s) that annihilate the off-diagonal entry of
// [[a, b], [b, d]] with b > 0.
std::pair<double, double> jacobi_rotation(double a, double d, double b) {
    const double zeta = (d - a) / (2.0 * b);
    const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return {c, c * t};
}

void check_tau(double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw ContractViolation("tolerance tau must lie in (0, 1)");
    }
}

}  // namespace

Spectrum eig_hermitian(const Matrix& h) {
    if (!h.square()) {
        throw ContractViolation("eig_hermitian: matrix is not square");
    }
    if (!h.all_finite()) {
        throw ContractViolation("eig_hermitian: non-finite entries");
    }
    if (!h.is_hermitian(1e-12)) {
        throw ContractViolation("eig_hermitian: matrix is not Hermitian");
    }
    const std::size_t n = h.rows();
    Matrix a = h.hermitian_part();
    Matrix v = Matrix::identity(n);

    double total = 0.0;
    for (const auto& x : a.data()) {
        total += std::norm(x);
    }
    const double stop = kEps * kEps * total * 1e-2;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (off <= stop || off == 0.0) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double b = std::abs(a(p, q));
                if (b == 0.0) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (b <= kEps * 1e-2 * std::sqrt(std::abs(app * aqq)) && sweep > 3) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const cplx phase = a(p, q) / b;  // e^{i phi}
                const auto [c, s] = jacobi_rotation(app, aqq, b);
                // J = D R with D = diag(1, e^{-i phi}) on (p, q).
                const cplx jpp = c;
                const cplx jpq = s;
                const cplx jqp = -s * std::conj(phase);
                const cplx jqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    Spectrum out;
    out.values.reserve(n);
    out.vectors = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values.push_back(a(order[i], order[i]).real());
        for (std::size_t k = 0; k < n; ++k) {
            out.vectors(k, i) = v(k, order[i]);
        }
    }
    return out;
}

Svd svd(const Matrix& m) {
    if (!m.all_finite()) {
        throw ContractViolation("svd: non-finite entries");
    }
    const std::size_t rows = m.rows();
    const std::size_t n = m.cols();
    Matrix w = m;
    Matrix v = Matrix::identity(n);
    double frob = 0.0;
    for (const auto& x : m.data()) {
        frob += std::norm(x);
    }
    // Columns below this squared norm are numerically zero; rotating them only
    // churns subnormal phases.
    const double negligible = frob * 1e-60;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0;
                double beta = 0.0;
                cplx gamma = 0.0;
                for (std::size_t k = 0; k < rows; ++k) {
                    alpha += std::norm(w(k, i));
                    beta += std::norm(w(k, j));
                    gamma += std::conj(w(k, i)) * w(k, j);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta) || std::min(alpha, beta) <= negligible) {
                    continue;
                }
                rotated = true;
                cplx phase = gamma / g;
                phase /= std::abs(phase);
                const auto [c, s] = jacobi_rotation(alpha, beta, g);
                // Columns (i, j) <- (c w_i - s e^{-i phi} w_j, s w_i + c e^{-i phi} w_j).
                const cplx e = std::conj(phase);
                for (std::size_t k = 0; k < rows; ++k) {
                    const cplx wi = w(k, i);
                    const cplx wj = w(k, j) * e;
                    w(k, i) = c * wi - s * wj;
                    w(k, j) = s * wi + c * wj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vi = v(k, i);
                    const cplx vj = v(k, j) * e;
                    v(k, i) = c * vi - s * vj;
                    v(k, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
            s += std::norm(w(k, j));
        }
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

    Svd out;
    out.values.reserve(n);
    out.u = Matrix(rows, n);
    out.v = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t j = order[c];
        out.values.push_back(norms[j]);
        for (std::size_t k = 0; k < n; ++k) {
            out.v(k, c) = v(k, j);
        }
        if (norms[j] > 0.0) {
            for (std::size_t k = 0; k < rows; ++k) {
                out.u(k, c) = w(k, j) / norms[j];
            }
        }
    }
    return out;
}

std::vector<double> singular_values(const Matrix& m) { return svd(m).values; }

std::size_t rank_tol(const Matrix& m, double tau) {
    check_tau(tau);
    if (m.empty()) {
        return 0;
    }
    const auto values = singular_values(m);
    if (values.empty() || values.front() == 0.0) {
        return 0;
    }
    const double cut = tau * values.front();
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [cut](double s) { return s > cut; }));
}

Matrix pseudo_inverse(const Matrix& h, double tau) {
    check_tau(tau);
    const Spectrum sp = eig_hermitian(h);
    const std::size_t n = h.rows();
    Matrix out(n, n);
    if (n == 0) {
        return out;
    }
    const double lmax = std::max(std::abs(sp.values.front()), std::abs(sp.values.back()));
    if (lmax == 0.0) {
        return out;
    }
    const double tr = h.trace().real();
    if (sp.values.front() < -tau * std::max(tr, lmax)) {
        throw DomainError("pseudo_inverse: matrix has a significantly negative eigenvalue");
    }
    const double cut = tau * lmax;
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = sp.values[k];
        if (lam <= cut) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = sp.vectors(i, k) / lam;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += vi * std::conj(sp.vectors(j, k));
            }
        }
    }
    return out.hermitian_part();
}

Matrix kernel_basis(const Matrix& m, double tau) {
    check_tau(tau);
    const std::size_t n = m.cols();
    if (m.rows() == 0) {
        return Matrix::identity(n);
    }
    const Svd d = svd(m);
    const double cut = d.values.empty() ? 0.0 : tau * d.values.front();
    std::vector<CVector> cols;
    for (std::size_t c = 0; c < n; ++c) {
        if (d.values.front() == 0.0 || d.values[c] <= cut) {
            cols.push_back(d.v.col(c));
        }
    }
    return Matrix::from_columns(cols, n);
}

Matrix range_basis(const Matrix& m, double tau) {
    check_tau(tau);
    if (m.cols() == 0 || m.rows() == 0) {
        return Matrix(m.rows(), 0);
    }
    const Svd d = svd(m);
    std::vector<CVector> cols;
    if (d.values.front() > 0.0) {
        const double cut = tau * d.values.front();
        for (std::size_t c = 0; c < d.values.size(); ++c) {
            if (d.values[c] > cut) {
                cols.push_back(d.u.col(c));
            }
        }
    }
    return Matrix::from_columns(cols, m.rows());
}

double projection_residual(const Matrix& basis, std::span<const cplx> v) {
    const double nv = norm(v);
    if (nv == 0.0) {
        return 0.0;
    }
    CVector r(v.begin(), v.end());
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        const CVector b = basis.col(c);
        axpy(-dot(b, v), b, r);
    }
    return norm(r) / nv;
}

CVector solve_least_squares(const Matrix& m, std::span<const cplx> b, double tau) {
    if (b.size() != m.rows()) {
        throw ContractViolation("solve_least_squares: right-hand side length mismatch");
    }
    CVector x(m.cols());
    if (m.empty()) {
        return x;
    }
    const Svd d = svd(m);
    if (d.values.front() == 0.0) {
        return x;
    }
    const double cut = tau * d.values.front();
    for (std::size_t c = 0; c < d.values.size(); ++c) {
        if (d.values[c] <= cut) {
            break;
        }
        cplx coef = 0.0;
        for (std::size_t k = 0; k < m.rows(); ++k) {
            coef += std::conj(d.u(k, c)) * b[k];
        }
        coef /= d.values[c];
        for (std::size_t k = 0; k < m.cols(); ++k) {
            x[k] += coef * d.v(k, c);
        }
    }
    return x;
}

CharPoly char_poly(const Matrix& m) {
    if (!m.square()) {
        throw ContractViolation("char_poly: matrix is not square");
    }
    const std::size_t n = m.rows();
    if (n > 16) {
        throw ContractViolation("char_poly: dimension above 16");
    }
    CharPoly out;
    out.coefficients.assign(n + 1, 0.0);
    out.coefficients[0] = 1.0;
    Matrix mk = Matrix::zeros(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I;  c_{n-k} = -tr(A M_k) / k
        mk = m * mk;
        for (std::size_t i = 0; i < n; ++i) {
            mk(i, i) += out.coefficients[k - 1];
        }
        const cplx tr = (m * mk).trace();
        out.coefficients[k] = -tr / static_cast<double>(k);
    }
    out.nearest_integers.reserve(n + 1);
    for (const auto& c : out.coefficients) {
        const double r = std::round(c.real());
        out.nearest_integers.push_back(static_cast<long long>(r));
        out.max_rounding_error = std::max(out.max_rounding_error, std::abs(c - cplx(r, 0.0)));
    }
    out.integral = out.max_rounding_error < 1e-4;
    return out;
}

cplx poly_eval(std::span<const cplx> coeffs, cplx t) {
    cplx acc = 0.0;
    for (const auto& c : coeffs) {
        acc = acc * t + c;
    }
    return acc;
}

std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
    std::vector<cplx> p{1.0};
    for (const auto& r : roots) {
        p.push_back(0.0);
        for (std::size_t i = p.size() - 1; i > 0; --i) {
            p[i] -= r * p[i - 1];
        }
    }
    return p;
}

std::vector<cplx> hessenberg_eigenvalues(Matrix h) {
    if (!h.square()) {
        throw ContractViolation("hessenberg_eigenvalues: matrix is not square");
    }
    const std::size_t n = h.rows();
    std::vector<cplx> eig(n);
    if (n == 0) {
        return eig;
    }
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    int iter = 0;
    int total = 0;
    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = h(0, 0);
            break;
        }
        // Find the start of the unreduced block ending at hi.
        std::ptrdiff_t lo = hi;
        while (lo > 0) {
            const auto l = static_cast<std::size_t>(lo);
            const double scale = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (std::abs(h(l, l - 1)) <= kEps * (scale == 0.0 ? 1.0 : scale)) {
                h(l, l - 1) = 0.0;
                break;
            }
            --lo;
        }
        const auto uhi = static_cast<std::size_t>(hi);
        if (lo == hi) {
            eig[uhi] = h(uhi, uhi);
            --hi;
            iter = 0;
            continue;
        }
        if (++total > 200 * static_cast<int>(n)) {
            throw NumericalDegeneracy("hessenberg_eigenvalues: QR iteration did not converge");
        }
        ++iter;
        cplx mu;
        if (iter % 11 == 0) {
            // Exceptional shift to break cycles.
            mu = h(uhi, uhi) + std::abs(h(uhi, uhi - 1)) * cplx(0.75, 0.4);
        } else {
            const cplx a = h(uhi - 1, uhi - 1);
            const cplx b = h(uhi - 1, uhi);
            const cplx c = h(uhi, uhi - 1);
            const cplx d = h(uhi, uhi);
            const cplx half_tr = 0.5 * (a + d);
            const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
            const cplx l1 = half_tr + disc;
            const cplx l2 = half_tr - disc;
            mu = std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
        }
        const auto ulo = static_cast<std::size_t>(lo);
        for (std::size_t k = ulo; k <= uhi; ++k) {
            h(k, k) -= mu;
        }
        std::vector<std::pair<cplx, cplx>> rot;
        rot.reserve(uhi - ulo);
        for (std::size_t k = ulo; k < uhi; ++k) {
            const cplx x = h(k, k);
            const cplx y = h(k + 1, k);
            const double r = std::hypot(std::abs(x), std::abs(y));
            cplx c = 1.0;
            cplx s = 0.0;
            if (r != 0.0) {
                c = x / r;
                s = y / r;
            }
            rot.emplace_back(c, s);
            for (std::size_t j = k; j <= uhi; ++j) {
                const cplx rk = h(k, j);
                const cplx rk1 = h(k + 1, j);
                h(k, j) = std::conj(c) * rk + std::conj(s) * rk1;
                h(k + 1, j) = -s * rk + c * rk1;
            }
        }
        for (std::size_t k = ulo; k < uhi; ++k) {
            const auto [c, s] = rot[k - ulo];
            const std::size_t last = std::min(k + 2, uhi);
            for (std::size_t i = ulo; i <= last; ++i) {
                const cplx ck = h(i, k);
                const cplx ck1 = h(i, k + 1);
                h(i, k) = ck * c + ck1 * s;
                h(i, k + 1) = -ck * std::conj(s) + ck1 * std::conj(c);
            }
        }
        for (std::size_t k = ulo; k <= uhi; ++k) {
            h(k, k) += mu;
        }
    }
    return eig;
}

std::vector<cplx> poly_roots(std::span<const cplx> coeffs) {
    // Strip exact leading zeros only to detect the zero polynomial.
    const bool all_zero = std::all_of(coeffs.begin(), coeffs.end(), [](const cplx& c) { return c == cplx{}; });
    if (coeffs.empty() || all_zero) {
        throw ContractViolation("poly_roots: zero polynomial");
    }
    if (coeffs.front() == cplx{}) {
        throw ContractViolation("poly_roots: leading coefficient is zero");
    }
    const std::size_t degree = coeffs.size() - 1;
    if (degree > 32) {
        throw ContractViolation("poly_roots: degree above 32");
    }
    if (degree == 0) {
        return {};
    }
    std::vector<cplx> monic(coeffs.begin(), coeffs.end());
    for (auto& c : monic) {
        c /= coeffs.front();
    }
    // Companion matrix in upper Hessenberg form, balanced by a diagonal
    // similarity (Parlett-Reinsch, powers of two).
    Matrix comp(degree, degree);
    for (std::size_t j = 0; j < degree; ++j) {
        comp(0, j) = -monic[j + 1];
    }
    for (std::size_t i = 1; i < degree; ++i) {
        comp(i, i - 1) = 1.0;
    }
    for (int pass = 0; pass < 20; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i < degree; ++i) {
            double row = 0.0;
            double col = 0.0;
            for (std::size_t j = 0; j < degree; ++j) {
                if (j != i) {
                    row += std::abs(comp(i, j));
                    col += std::abs(comp(j, i));
                }
            }
            if (row == 0.0 || col == 0.0) {
                continue;
            }
            double f = 1.0;
            const double s = row + col;
            while (col < row / 2.0) {
                col *= 2.0;
                row /= 2.0;
                f *= 2.0;
            }
            while (col >= row * 2.0) {
                col /= 2.0;
                row *= 2.0;
                f /= 2.0;
            }
            if ((row + col) < 0.95 * s) {
                changed = true;
                for (std::size_t j = 0; j < degree; ++j) {
                    comp(i, j) /= f;
                    comp(j, i) *= f;
                }
            }
        }
        if (!changed) {
            break;
        }
    }
    std::vector<cplx> roots = hessenberg_eigenvalues(comp);

    // Newton polishing against the original coefficients; keep a step only
    // when it does not increase the residual.
    std::vector<cplx> deriv(degree);
    for (std::size_t i = 0; i < degree; ++i) {
        deriv[i] = monic[i] * static_cast<double>(degree - i);
    }
    for (auto& r : roots) {
        double res = std::abs(poly_eval(monic, r));
        for (int step = 0; step < 4 && res > 0.0; ++step) {
            const cplx dp = poly_eval(deriv, r);
            if (dp == cplx{}) {
                break;
            }
            const cplx cand = r - poly_eval(monic, r) / dp;
            const double cres = std::abs(poly_eval(monic, cand));
            if (!(cres < res)) {
                break;
            }
            r = cand;
            res = cres;
        }
    }
    return roots;
}

}  // namespace pptlab
