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


#include "pptlab/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pptlab/errors.hpp"
#include "pptlab/numerics.hpp"
#include "pptlab/pencil.hpp"
#include "pptlab/random.hpp"

namespace pptlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kSeeds = 32;

void require_2xn(const BipartiteState& rho, const char* who) {
    if (rho.dim_a != 2 || rho.dim_b < 1) {
        throw ContractViolation(std::string(who) + ": needs a 2 (x) N state");
    }
}

void require_ppt(const BipartiteState& rho, double tau, const char* who) {
    if (!is_psd(rho.matrix, tau) || classify(rho, tau).verdict != Verdict::PPT) {
        throw ContractViolation(std::string(who) + ": state is not PPT within tau");
    }
}

double quad(const Matrix& h, const CVector& v) { return dot(v, h * v).real(); }

bool same_ray(const CVector& u, const CVector& v) {
    return std::abs(dot(u, v)) >= (1.0 - 1e-8) * norm(u) * norm(v);
}

void push_unique(std::vector<ProductVector>& out, ProductVector pv) {
    const CVector t = pv.tensor();
    for (const auto& q : out) {
        if (same_ray(q.tensor(), t)) {
            return;
        }
    }
    out.push_back(std::move(pv));
}

ProductVector unit(const ProductVector& pv) { return {normalized(pv.a), normalized(pv.b)}; }

bool is_zero_state(const BipartiteState& x, double reference) { return x.matrix.max_abs() <= 1e-9 * reference; }

// S(a) y = 0 says a (x) y lies in R(rho) (rows from ker rho, holomorphic in a)
// and a* (x) y lies in R(rho^Gamma) (rows from ker rho^Gamma, antiholomorphic).
class StackedSystem {
   public:
    StackedSystem(const BipartiteState& rho, double tau) : n_(rho.dim_b) {
        const auto split = [this](const Matrix& ker, std::vector<CVector>& lo, std::vector<CVector>& hi) {
            for (std::size_t c = 0; c < ker.cols(); ++c) {
                const CVector k = ker.col(c);
                lo.emplace_back(n_);
                hi.emplace_back(n_);
                for (std::size_t j = 0; j < n_; ++j) {
                    lo.back()[j] = std::conj(k[j]);
                    hi.back()[j] = std::conj(k[n_ + j]);
                }
            }
        };
        split(kernel_basis(rho.matrix, tau), h0_, h1_);
        split(kernel_basis(partial_transpose(rho).matrix, tau), g0_, g1_);
    }

    std::size_t rows() const { return h0_.size() + g0_.size(); }
    std::size_t n() const { return n_; }

    Matrix at(cplx a0, cplx a1) const {
        Matrix s(rows(), n_);
        std::size_t r = 0;
        for (std::size_t m = 0; m < h0_.size(); ++m, ++r) {
            for (std::size_t j = 0; j < n_; ++j) {
                s(r, j) = a0 * h0_[m][j] + a1 * h1_[m][j];
            }
        }
        for (std::size_t m = 0; m < g0_.size(); ++m, ++r) {
            for (std::size_t j = 0; j < n_; ++j) {
                s(r, j) = std::conj(a0) * g0_[m][j] + std::conj(a1) * g1_[m][j];
            }
        }
        return s;
    }
    Matrix at(const CVector& a) const { return at(a[0], a[1]); }

    /// Orthonormal basis of ker S(a); the whole space when there are no rows.
    Matrix fiber(const CVector& a, double tau) const {
        if (rows() == 0) {
            return Matrix::identity(n_);
        }
        return kernel_basis(at(a), tau);
    }

    // Derivative rows of S(a) y along the chart coordinate t, where the chart
    // is a = (1, t) when `first`, else a = (t, 1).
    void chart_derivative(bool first, const CVector& y, CVector& holo, CVector& anti) const {
        holo.assign(h0_.size(), 0.0);
        anti.assign(g0_.size(), 0.0);
        const auto& hs = first ? h1_ : h0_;
        const auto& gs = first ? g1_ : g0_;
        for (std::size_t m = 0; m < hs.size(); ++m) {
            for (std::size_t j = 0; j < n_; ++j) {
                holo[m] += hs[m][j] * y[j];
            }
        }
        for (std::size_t m = 0; m < gs.size(); ++m) {
            for (std::size_t j = 0; j < n_; ++j) {
                anti[m] += gs[m][j] * y[j];
            }
        }
    }

   private:
    std::size_t n_;
    std::vector<CVector> h0_, h1_, g0_, g1_;
};

class RangeTester {
   public:
    RangeTester(const BipartiteState& rho, double tau)
        : rho_range_(range_basis(rho.matrix, tau)), gamma_range_(range_basis(partial_transpose(rho).matrix, tau)) {}

    double joint(const CVector& a, const CVector& y) const {
        return std::max(projection_residual(rho_range_, kron(a, y)), projection_residual(gamma_range_, kron(conj(a), y)));
    }

   private:
    Matrix rho_range_;
    Matrix gamma_range_;
};

CVector bloch(const CVector& a) {
    const cplx x = std::conj(a[0]) * a[1];
    return {2.0 * x.real(), 2.0 * x.imag(), std::norm(a[0]) - std::norm(a[1])};
}

double bloch_angle(const CVector& a, const CVector& b) {
    const CVector u = bloch(a);
    const CVector v = bloch(b);
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        d += (u[i] * v[i]).real();
    }
    return std::acos(std::clamp(d, -1.0, 1.0));
}

struct Refined {
    CVector a;
    CVector y;
};

// Real Gauss-Newton on (t, y) for S(a(t)) y = 0 with <y0, y> = 1.
Refined refine(const StackedSystem& sys, CVector a, CVector y0) {
    const std::size_t n = sys.n();
    const std::size_t m = sys.rows();
    bool first = std::abs(a[0]) >= std::abs(a[1]);
    cplx t = first ? a[1] / a[0] : a[0] / a[1];
    const CVector yref = y0;
    CVector y = y0;

    const auto chart = [](bool f, cplx tt) { return f ? CVector{1.0, tt} : CVector{tt, 1.0}; };
    const auto residual = [&](bool f, cplx tt, const CVector& yy) {
        CVector r = sys.at(chart(f, tt)) * yy;
        r.push_back(dot(yref, yy) - 1.0);
        return r;
    };

    CVector r = residual(first, t, y);
    double rn = norm(r);
    CVector holo, anti;
    for (int it = 0; it < 40 && rn > 1e-15; ++it) {
        const Matrix s = sys.at(chart(first, t));
        sys.chart_derivative(first, y, holo, anti);
        const std::size_t cols = 2 + 2 * n;
        Matrix jac(2 * (m + 1), cols);
        CVector rhs(2 * (m + 1));
        const auto put = [&](std::size_t row, std::size_t col, cplx d) {
            jac(2 * row, col) = d.real();
            jac(2 * row + 1, col) = d.imag();
        };
        const cplx i1(0.0, 1.0);
        for (std::size_t row = 0; row < m; ++row) {
            const bool is_holo = row < holo.size();
            const cplx d = is_holo ? holo[row] : anti[row - holo.size()];
            put(row, 0, d);
            put(row, 1, is_holo ? i1 * d : -i1 * d);
            for (std::size_t j = 0; j < n; ++j) {
                put(row, 2 + j, s(row, j));
                put(row, 2 + n + j, i1 * s(row, j));
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            put(m, 2 + j, std::conj(yref[j]));
            put(m, 2 + n + j, i1 * std::conj(yref[j]));
        }
        for (std::size_t row = 0; row <= m; ++row) {
            rhs[2 * row] = -r[row].real();
            rhs[2 * row + 1] = -r[row].imag();
        }
        const CVector step = solve_least_squares(jac, rhs);

        bool improved = false;
        for (double scale = 1.0; scale > 1e-3; scale *= 0.5) {
            const cplx tt = t + scale * cplx(step[0].real(), step[1].real());
            CVector yy = y;
            for (std::size_t j = 0; j < n; ++j) {
                yy[j] += scale * cplx(step[2 + j].real(), step[2 + n + j].real());
            }
            const CVector rr = residual(first, tt, yy);
            const double nn = norm(rr);
            if (nn < rn) {
                t = tt;
                y = std::move(yy);
                r = rr;
                rn = nn;
                improved = true;
                break;
            }
        }
        if (!improved) {
            break;
        }
        if (std::abs(t) > 1.5) {
            first = !first;
            t = 1.0 / t;
            r = residual(first, t, y);
            rn = norm(r);
        }
    }
    return {normalized(chart(first, t)), normalized(y)};
}

}  // namespace

bool SubtractionAnalysis::tied() const {
    if (!std::isfinite(lambda0) || !std::isfinite(lambda1)) {
        return false;
    }
    return std::abs(lambda0 - lambda1) <= kThresholdTie * std::max(lambda0, lambda1);
}

ThresholdCalculator::ThresholdCalculator(const BipartiteState& rho, double tau) : rho_(rho) {
    require_ppt(rho, tau, "ThresholdCalculator");
    const BipartiteState gamma = partial_transpose(rho);
    rho_pinv_ = pseudo_inverse(rho.matrix, tau);
    gamma_pinv_ = pseudo_inverse(gamma.matrix, tau);
    rho_range_ = range_basis(rho.matrix, tau);
    gamma_range_ = range_basis(gamma.matrix, tau);
}

SubtractionAnalysis ThresholdCalculator::analyze(const ProductVector& pv) const {
    check_product_vector(pv);
    if (pv.a.size() != rho_.dim_a || pv.b.size() != rho_.dim_b) {
        throw ContractViolation("subtraction_analysis: product vector shape does not match the state");
    }
    const CVector v = pv.tensor();
    const CVector w = pv.partial_conjugate();
    SubtractionAnalysis out;
    out.in_range_rho = projection_residual(rho_range_, v) <= kMembershipCut;
    out.in_range_gamma = projection_residual(gamma_range_, w) <= kMembershipCut;
    const double q0 = quad(rho_pinv_, v);
    const double q1 = quad(gamma_pinv_, w);
    out.g = q0 - q1;
    out.lambda0 = out.in_range_rho && q0 > 0 ? 1.0 / q0 : kInf;
    out.lambda1 = out.in_range_gamma && q1 > 0 ? 1.0 / q1 : kInf;
    return out;
}

double ThresholdCalculator::g(const ProductVector& pv) const {
    return quad(rho_pinv_, pv.tensor()) - quad(gamma_pinv_, pv.partial_conjugate());
}

SubtractionAnalysis subtraction_analysis(const BipartiteState& rho, const ProductVector& pv, double tau) {
    return ThresholdCalculator(rho, tau).analyze(pv);
}

SubtractionResult subtract(const BipartiteState& rho, const ProductVector& pv, double lambda, double tau) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ContractViolation("subtract: lambda must be positive and finite");
    }
    const ThresholdCalculator calc(rho, tau);
    SubtractionResult out;
    out.analysis = calc.analyze(pv);
    const auto& an = out.analysis;
    if (!an.in_range_rho || !an.in_range_gamma) {
        throw ContractViolation("subtract: product vector is outside R(rho) or its partial conjugate outside R(rho^Gamma)");
    }
    if (lambda > an.lambda0 * (1.0 + tau)) {
        throw DomainError("subtract: lambda exceeds lambda0, rho - lambda P would not be positive");
    }
    if (lambda > an.lambda1 * (1.0 + tau)) {
        throw DomainError("subtract: lambda exceeds lambda1, the partial transpose would not be positive");
    }
    out.before = birank(rho, tau);
    out.predicted = out.before;
    if (std::abs(lambda - an.lambda0) <= kThresholdTie * an.lambda0) {
        --out.predicted.r;
    }
    if (std::abs(lambda - an.lambda1) <= kThresholdTie * an.lambda1) {
        --out.predicted.s;
    }
    Matrix p = Matrix::outer(pv.tensor());
    p *= lambda;
    Matrix rest = (rho.matrix - p).hermitian_part();
    if (rest.max_abs() <= tau * rho.matrix.max_abs()) {
        rest = Matrix(rho.dim(), rho.dim());
    }
    out.state = BipartiteState(rho.dim_a, rho.dim_b, std::move(rest));
    out.observed = birank(out.state, tau);
    return out;
}

double g_sum(const BipartiteState& rho, std::span<const ProductVector> terms, double tau) {
    const ThresholdCalculator calc(rho, tau);
    double s = 0.0;
    for (const auto& t : terms) {
        s += calc.g(t);
    }
    return s;
}

RangeSearch range_product_search(const BipartiteState& rho, std::size_t grid, double tau) {
    require_2xn(rho, "range_product_search");
    if (grid == 0) {
        throw ContractViolation("range_product_search: grid must be positive");
    }
    const StackedSystem sys(rho, tau);
    const RangeTester tester(rho, tau);
    const std::vector<CVector> points = fibonacci_qubits(grid);
    const std::size_t n = rho.dim_b;

    RangeSearch out;
    out.grid = grid;
    if (sys.rows() < n) {
        // Fewer constraints than unknowns: every |a> carries a fiber.
        out.everywhere = true;
        out.min_residual = kInf;
        for (const auto& a : points) {
            const Matrix f = sys.fiber(a, tau);
            for (std::size_t c = 0; c < f.cols(); ++c) {
                const CVector y = f.col(c);
                const double res = tester.joint(a, y);
                out.min_residual = std::min(out.min_residual, res);
                if (res <= kMembershipCut) {
                    out.vectors.push_back({a, y});
                }
            }
        }
        return out;
    }

    std::vector<double> smin(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        smin[i] = singular_values(sys.at(points[i])).back();
    }
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&smin](std::size_t x, std::size_t y) { return smin[x] < smin[y]; });

    const double separation = 3.0 * std::sqrt(4.0 * std::numbers::pi / static_cast<double>(grid));
    std::vector<std::size_t> seeds;
    for (std::size_t idx : order) {
        if (seeds.size() == kSeeds) {
            break;
        }
        const bool far = std::all_of(seeds.begin(), seeds.end(), [&](std::size_t s) {
            return bloch_angle(points[s], points[idx]) > separation;
        });
        if (far) {
            seeds.push_back(idx);
        }
    }

    out.min_residual = kInf;
    for (std::size_t s : seeds) {
        const CVector& a0 = points[s];
        const Svd d0 = svd(sys.at(a0));
        const Refined ref = refine(sys, a0, d0.v.col(n - 1));
        out.min_residual = std::min(out.min_residual, tester.joint(ref.a, ref.y));
        if (tester.joint(ref.a, ref.y) <= kMembershipCut) {
            push_unique(out.vectors, {ref.a, ref.y});
        }
        // Higher-dimensional fibers at the converged point.
        const Svd d = svd(sys.at(ref.a));
        for (std::size_t c = 0; c < n; ++c) {
            if (d.values[c] > 1e-7) {
                continue;
            }
            const CVector y = d.v.col(c);
            if (tester.joint(ref.a, y) <= kMembershipCut) {
                push_unique(out.vectors, {ref.a, y});
            }
        }
    }
    return out;
}

std::vector<ProductVector> range_product_vectors_2xN(const BipartiteState& rho, std::size_t grid, double tau) {
    return range_product_search(rho, grid, tau).vectors;
}

const char* to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::Edge:
            return "edge";
        case EdgeKind::NotEdge:
            return "not-edge";
        case EdgeKind::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

EdgeVerdict is_edge_state(const BipartiteState& rho, std::size_t grid, double tau) {
    require_ppt(rho, tau, "is_edge_state");
    EdgeVerdict out;
    out.grid = grid;
    if (rho.dim_a == 2) {
        const RangeSearch rs = range_product_search(rho, grid, tau);
        out.residual = rs.min_residual;
        if (!rs.vectors.empty()) {
            out.verdict = EdgeKind::NotEdge;
            out.witness = rs.vectors.front();
        } else {
            out.verdict = rs.min_residual > 10.0 * tau ? EdgeKind::Edge : EdgeKind::Inconclusive;
        }
        return out;
    }
    if (rho.dim_a == 3 && rho.dim_b == 3) {
        out.grid = 0;
        const Matrix range = range_basis(rho.matrix, tau);
        if (range.cols() != 4 && range.cols() != 5) {
            out.note = "3x3 finder needs rank 4 or 5";
            return out;
        }
        std::vector<CVector> basis;
        for (std::size_t c = 0; c < range.cols(); ++c) {
            basis.push_back(range.col(c));
        }
        const Subspace3x3Result found = product_vectors_in_subspace_3x3(basis);
        if (found.non_generic) {
            out.note = "range contains a continuous family of product vectors";
            return out;
        }
        const RangeTester tester(rho, tau);
        out.residual = 1.0;
        for (const auto& pv : found.vectors) {
            const double res = tester.joint(pv.a, pv.b);
            out.residual = std::min(out.residual, res);
            if (res <= kMembershipCut) {
                out.verdict = EdgeKind::NotEdge;
                out.witness = pv;
                return out;
            }
        }
        out.verdict = out.residual > 10.0 * tau ? EdgeKind::Edge : EdgeKind::Inconclusive;
        return out;
    }
    out.note = "no edge test for this shape";
    return out;
}

ProductVector find_balanced_vector(const BipartiteState& rho, std::span<const ProductVector> candidates, double tau) {
    require_2xn(rho, "find_balanced_vector");
    const ThresholdCalculator calc(rho, tau);
    const StackedSystem sys(rho, tau);

    std::vector<ProductVector> pool;
    if (candidates.empty()) {
        pool = range_product_vectors_2xN(rho, kDefaultGrid, tau);
    } else {
        pool.assign(candidates.begin(), candidates.end());
    }
    std::vector<ProductVector> valid;
    std::vector<double> gs;
    for (const auto& c : pool) {
        const ProductVector u = unit(c);
        const SubtractionAnalysis an = calc.analyze(u);
        if (an.in_range_rho && an.in_range_gamma) {
            valid.push_back(u);
            gs.push_back(an.g);
        }
    }
    if (valid.empty()) {
        throw NumericalDegeneracy("find_balanced_vector: no candidate lies in both ranges");
    }
    double scale = 0.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        scale = std::max(scale, std::abs(gs[i]));
        if (std::abs(gs[i]) < std::abs(gs[best])) {
            best = i;
        }
    }
    if (std::abs(gs[best]) <= 1e-13 * std::max(1.0, scale)) {
        return valid[best];
    }

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        (gs[i] > 0 ? pos : neg).push_back(i);
    }
    if (pos.empty() || neg.empty()) {
        throw NumericalDegeneracy("find_balanced_vector: every candidate has g of one sign, contradicting sum g = r - s = 0");
    }
    std::sort(pos.begin(), pos.end(), [&gs](std::size_t x, std::size_t y) { return gs[x] > gs[y]; });
    std::sort(neg.begin(), neg.end(), [&gs](std::size_t x, std::size_t y) { return gs[x] < gs[y]; });

    const auto project = [&](const CVector& a, const CVector& y) {
        const Matrix f = sys.fiber(a, tau);
        CVector out(y.size());
        for (std::size_t c = 0; c < f.cols(); ++c) {
            const CVector col = f.col(c);
            axpy(dot(col, y), col, out);
        }
        return out;
    };

    const auto attempt = [&](const ProductVector& p, const ProductVector& q) -> std::optional<ProductVector> {
        const CVector ap = p.a;
        CVector aq = q.a;
        const cplx ov = dot(ap, aq);
        if (std::abs(ov) > 0) {
            aq = scaled(aq, std::conj(ov) / std::abs(ov));
        }
        const double theta = std::acos(std::clamp(std::abs(ov), 0.0, 1.0));
        const auto geo = [&](double t) {
            if (theta < 1e-14) {
                return ap;
            }
            CVector a = scaled(ap, std::sin((1.0 - t) * theta) / std::sin(theta));
            axpy(std::sin(t * theta) / std::sin(theta), aq, a);
            return normalized(a);
        };

        // Section of the fiber bundle along the A-path.
        std::vector<double> ts;
        std::vector<CVector> ys;
        bool ok = false;
        for (std::size_t count = 64; count <= 4096 && !ok; count *= 2) {
            ts.assign(1, 0.0);
            ys.assign(1, p.b);
            ok = true;
            for (std::size_t i = 1; i <= count && theta >= 1e-14; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(count);
                const CVector y = project(geo(t), ys.back());
                const double ny = norm(y);
                if (ny < 0.9) {
                    ok = false;
                    break;
                }
                ts.push_back(t);
                ys.push_back(scaled(y, 1.0 / ny));
            }
        }
        if (!ok) {
            return std::nullopt;
        }
        const auto g_at = [&](const CVector& a, const CVector& y) { return calc.g({a, y}); };

        // A-path first.
        double gl = g_at(geo(0.0), ys[0]);
        for (std::size_t i = 1; i < ts.size(); ++i) {
            const double gr = g_at(geo(ts[i]), ys[i]);
            if ((gl > 0) != (gr > 0) || gr == 0.0) {
                double lo = ts[i - 1], hi = ts[i];
                CVector ylo = ys[i - 1];
                CVector a_best = geo(hi), y_best = ys[i];
                double g_best = gr;
                const bool left_pos = gl > 0;
                for (int it = 0; it < 80 && hi - lo > 0; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) {
                        break;
                    }
                    const CVector am = geo(mid);
                    const CVector ym = normalized(project(am, ylo));
                    const double gm = g_at(am, ym);
                    if (std::abs(gm) < std::abs(g_best)) {
                        g_best = gm;
                        a_best = am;
                        y_best = ym;
                    }
                    if (gm == 0.0) {
                        break;
                    }
                    if ((gm > 0) == left_pos) {
                        lo = mid;
                        ylo = ym;
                    } else {
                        hi = mid;
                    }
                }
                return ProductVector{a_best, y_best};
            }
            gl = gr;
        }

        // Then inside the fiber over q's A-factor, from the section end to q's B-factor.
        const CVector y_end = ys.back();
        CVector bq = q.b;
        const cplx ob = dot(y_end, bq);
        if (std::abs(ob) > 0) {
            bq = scaled(bq, std::conj(ob) / std::abs(ob));
        }
        const auto arc = [&](double s) {
            CVector y = scaled(y_end, 1.0 - s);
            axpy(s, bq, y);
            return normalized(y);
        };
        double lo = 0.0, hi = 1.0;
        const bool left_pos = gl > 0;
        if ((g_at(aq, arc(1.0)) > 0) == left_pos) {
            return std::nullopt;
        }
        CVector y_best = arc(1.0);
        double g_best = g_at(aq, y_best);
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            const CVector ym = arc(mid);
            const double gm = g_at(aq, ym);
            if (std::abs(gm) < std::abs(g_best)) {
                g_best = gm;
                y_best = ym;
            }
            if (gm == 0.0) {
                break;
            }
            if ((gm > 0) == left_pos) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return ProductVector{aq, y_best};
    };

    const std::size_t limit = 8;
    for (std::size_t i = 0; i < std::min(pos.size(), limit); ++i) {
        for (std::size_t j = 0; j < std::min(neg.size(), limit); ++j) {
            const auto found = attempt(valid[pos[i]], valid[neg[j]]);
            if (!found) {
                continue;
            }
            const SubtractionAnalysis an = calc.analyze(*found);
            if (an.in_range_rho && an.in_range_gamma) {
                return *found;
            }
        }
    }
    throw NumericalDegeneracy("find_balanced_vector: fiber section broke on every candidate path");
}

namespace {

enum class StepRule { LowerS, LowerR, Balanced, Tie };

struct Step {
    ProductVector pv;
    double lambda = 0.0;
    Birank expected;
};

Step choose_step(const BipartiteState& rho, StepRule rule, std::span<const ProductVector> seeds, std::size_t grid,
                 double tau) {
    const Birank br = birank(rho, tau);
    const ThresholdCalculator calc(rho, tau);
    Step step;
    if (rule == StepRule::Balanced) {
        step.pv = find_balanced_vector(rho, seeds, tau);
        const SubtractionAnalysis an = calc.analyze(step.pv);
        step.lambda = an.min_lambda();
        step.expected = {br.r - 1, br.s - 1};
        return step;
    }
    std::vector<ProductVector> pool;
    if (seeds.empty()) {
        pool = range_product_vectors_2xN(rho, grid, tau);
    } else {
        pool.assign(seeds.begin(), seeds.end());
    }
    double best_score = kInf;
    bool any = false;
    for (const auto& c : pool) {
        const ProductVector u = unit(c);
        const SubtractionAnalysis an = calc.analyze(u);
        if (!an.in_range_rho || !an.in_range_gamma) {
            continue;
        }
        double score = 0.0;
        switch (rule) {
            case StepRule::LowerS:
                score = an.g;  // most negative
                break;
            case StepRule::LowerR:
                score = -an.g;  // most positive
                break;
            default:
                score = std::abs(an.lambda0 - an.lambda1) / std::max(an.lambda0, an.lambda1);
                break;
        }
        if (score < best_score) {
            best_score = score;
            step.pv = u;
            any = true;
            switch (rule) {
                case StepRule::LowerS:
                    step.lambda = an.lambda1;
                    break;
                case StepRule::LowerR:
                    step.lambda = an.lambda0;
                    break;
                default:
                    step.lambda = an.min_lambda();
                    break;
            }
        }
    }
    if (!any) {
        throw NumericalDegeneracy("surgery: no product vector found in both ranges at birank (" +
                                  std::to_string(br.r) + ", " + std::to_string(br.s) + ")");
    }
    step.expected = br;
    if (rule != StepRule::LowerR) {
        --step.expected.s;
    }
    if (rule != StepRule::LowerS) {
        --step.expected.r;
    }
    return step;
}

// Runs the subtraction chain until nothing is left; `balanced_ok` enables the
// balanced-vector rule for r = s with 2r > 3N.
std::vector<ProductVector> descend(BipartiteState current, std::span<const ProductVector> decomposition,
                                   std::size_t grid, double tau, std::vector<Birank>* chain) {
    const double reference = current.matrix.max_abs();
    const std::size_t n = current.dim_b;
    std::vector<ProductVector> terms;
    bool first = true;
    for (std::size_t guard = 0; guard <= 4 * current.dim(); ++guard) {
        if (is_zero_state(current, reference)) {
            return terms;
        }
        const Birank br = birank(current, tau);
        if (chain != nullptr) {
            chain->push_back(br);
        }
        StepRule rule = StepRule::Tie;
        if (br.r < br.s) {
            rule = StepRule::LowerS;
        } else if (br.r > br.s) {
            rule = StepRule::LowerR;
        } else if (2 * br.r > 3 * n) {
            rule = StepRule::Balanced;
        }
        const std::span<const ProductVector> seeds = first ? decomposition : std::span<const ProductVector>{};
        first = false;
        const Step step = choose_step(current, rule, seeds, grid, tau);
        const SubtractionResult res = subtract(current, step.pv, step.lambda, tau);
        if (res.observed != step.expected) {
            throw NumericalDegeneracy("surgery: subtraction at birank (" + std::to_string(br.r) + ", " +
                                      std::to_string(br.s) + ") gave (" + std::to_string(res.observed.r) + ", " +
                                      std::to_string(res.observed.s) + ") instead of (" +
                                      std::to_string(step.expected.r) + ", " + std::to_string(step.expected.s) +
                                      ")");
        }
        terms.push_back({scaled(step.pv.a, std::sqrt(step.lambda)), step.pv.b});
        current = res.state;
    }
    throw NumericalDegeneracy("surgery: subtraction chain did not terminate");
}

}  // namespace

LengthResult length_2x3(const BipartiteState& rho, std::span<const ProductVector> decomposition, double tau) {
    require_2xn(rho, "length_2x3");
    if (rho.dim_b < 2 || rho.dim_b > 3) {
        throw ContractViolation("length_2x3: needs a 2 (x) 2 or 2 (x) 3 state");
    }
    require_ppt(rho, tau, "length_2x3");
    const Birank br = birank(rho, tau);
    LengthResult out;
    out.decomposition = descend(rho, decomposition, kDefaultGrid, tau, &out.chain);
    out.length = out.decomposition.size();
    const double err = max_abs_diff(mixture(out.decomposition).matrix, rho.matrix);
    if (err > 1e-8 * rho.trace()) {
        throw NumericalDegeneracy("length_2x3: decomposition does not reconstruct the state");
    }
    if (out.length != std::max(br.r, br.s)) {
        throw NumericalDegeneracy("length_2x3: decomposition has " + std::to_string(out.length) +
                                  " terms, expected max(r, s) = " + std::to_string(std::max(br.r, br.s)));
    }
    return out;
}

Theorem23Result theorem23_decompose(const BipartiteState& rho, std::size_t grid, double tau) {
    require_2xn(rho, "theorem23_decompose");
    require_ppt(rho, tau, "theorem23_decompose");
    const std::size_t n = rho.dim_b;
    if (birank(rho, tau) != Birank{n + 1, n + 1}) {
        throw ContractViolation("theorem23_decompose: needs birank (N+1, N+1)");
    }
    const double reference = rho.matrix.max_abs();
    Theorem23Result out;
    BipartiteState current = rho;
    while (!is_zero_state(current, reference)) {
        const std::size_t rank_b = local_ranks(current, tau).second;
        const ThresholdCalculator calc(current, tau);
        bool split = false;
        for (const auto& c : range_product_vectors_2xN(current, grid, tau)) {
            const ProductVector u = unit(c);
            const SubtractionAnalysis an = calc.analyze(u);
            if (!an.in_range_rho || !an.in_range_gamma) {
                continue;
            }
            const double lambda = an.min_lambda();
            const BipartiteState pure = lambda * pure_state(2, n, u.tensor());
            const BipartiteState rest(2, n, (current - pure).matrix.hermitian_part());
            if (!is_psd(rest.matrix, tau) || classify(rest, tau).verdict != Verdict::PPT) {
                continue;
            }
            const bool rest_zero = is_zero_state(rest, reference);
            if (!rest_zero && local_ranks(rest, tau).second + 1 != rank_b) {
                continue;
            }
            const BipartiteState parts[] = {rest, pure};
            if (!rest_zero && !verify_direct_sum(current, parts, Side::B, tau)) {
                continue;
            }
            out.split.push_back({scaled(u.a, std::sqrt(lambda)), u.b});
            current = rest;
            split = true;
            break;
        }
        if (!split) {
            break;
        }
    }
    out.core = current;
    if (is_zero_state(current, reference)) {
        out.core_verdict.verdict = EdgeKind::NotEdge;
        out.core_verdict.note = "fully split";
        return out;
    }
    out.core_verdict = is_edge_state(current, grid, tau);
    if (out.core_verdict.verdict == EdgeKind::Edge) {
        out.entangled = true;
        return out;
    }
    if (out.core_verdict.verdict == EdgeKind::NotEdge) {
        try {
            out.core_terms = descend(current, {}, grid, tau, nullptr);
        } catch (const NumericalDegeneracy& e) {
            throw NumericalDegeneracy(std::string("theorem23_decompose: core is neither edge nor decomposable, "
                                                  "inconsistent with the theorem: ") +
                                      e.what());
        }
    }
    return out;
}

PeelResult lemma22_peel(const BipartiteState& rho, std::span<const ProductVector> decomposition, double tau) {
    const std::size_t r = rank_tol(rho.matrix, tau);
    if (decomposition.size() != r) {
        throw ContractViolation("lemma22_peel: decomposition has " + std::to_string(decomposition.size()) +
                                " terms but rank is " + std::to_string(r));
    }
    for (std::size_t i = 0; i < decomposition.size(); ++i) {
        std::vector<ProductVector> rest;
        for (std::size_t j = 0; j < decomposition.size(); ++j) {
            if (j != i) {
                rest.push_back(decomposition[j]);
            }
        }
        BipartiteState sigma = rho - pure_state(rho.dim_a, rho.dim_b, decomposition[i].tensor());
        sigma = BipartiteState(rho.dim_a, rho.dim_b, sigma.matrix.hermitian_part());
        if (is_psd(sigma.matrix, tau) && rank_tol(sigma.matrix, tau) + 1 == r) {
            return {std::move(sigma), decomposition[i], std::move(rest)};
        }
    }
    throw NumericalDegeneracy("lemma22_peel: no term drops the rank by one");
}

Example21Check example21_check(std::span<const ProductVector> kernel, double tau) {
    if (kernel.size() != 6) {
        throw ContractViolation("example21_check: needs the six kernel product vectors");
    }
    std::vector<ProductVector> psi;
    for (const auto& k : kernel) {
        psi.push_back(unit(k));
    }
    const BipartiteState sigma = mixture(psi);
    Example21Check out;
    out.sigma_birank = birank(sigma, tau);
    const SubtractionAnalysis an = subtraction_analysis(sigma, psi[0], tau);
    out.c = an.min_lambda();
    const BipartiteState residual = sigma - out.c * pure_state(3, 3, psi[0].tensor());
    const BipartiteState clean(3, 3, residual.matrix.hermitian_part());
    out.residual_ppt = is_psd(clean.matrix, tau) && classify(clean, tau).verdict == Verdict::PPT;
    out.residual_birank = birank(clean, tau);

    const std::size_t d = sigma.dim() * sigma.dim();
    Matrix basis(d, psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const Matrix p = Matrix::outer(psi[i].tensor());
        for (std::size_t e = 0; e < d; ++e) {
            basis(e, i) = p.data()[e];
        }
    }
    const CVector target(clean.matrix.data().begin(), clean.matrix.data().end());
    const CVector x = solve_least_squares(basis, target);
    out.c1 = x[0].real();
    CVector fit = basis * x;
    axpy(-1.0, target, fit);
    out.fit_residual = norm(fit) / norm(target);
    return out;
}

}  // namespace pptlab
