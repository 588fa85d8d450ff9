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


// Runs every acceptance criterion at its stated tolerance and prints one
// [PASS]/[FAIL] line per criterion. Exit status is 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "oracles.hpp"
#include "pptlab/atlas.hpp"
#include "pptlab/errors.hpp"
#include "pptlab/pencil.hpp"
#include "pptlab/surgery.hpp"

using namespace pptlab;
using namespace pptlab_test;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string failures;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (failures.size() < 400) {
                failures += (failures.empty() ? "" : "; ") + what;
            }
        }
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::string br(const Birank& b) { return "(" + std::to_string(b.r) + "," + std::to_string(b.s) + ")"; }

// "(r,s)" at the end of a table row id.
Birank printed_birank(const std::string& id) {
    const auto open = id.rfind('(');
    const auto comma = id.find(',', open);
    return {std::stoul(id.substr(open + 1, comma - open - 1)), std::stoul(id.substr(comma + 1))};
}

Outcome criterion1() {
    Outcome o;
    const Matrix gamma = partial_transpose(fixed_example("example26").state).matrix;
    const CharPoly cp = char_poly(gamma);
    const double expected[] = {1, -19, 133, -413, 520, -148, 4};
    double worst = 0.0;
    o.require(cp.coefficients.size() == 7, "degree");
    for (std::size_t i = 0; i < std::min<std::size_t>(7, cp.coefficients.size()); ++i) {
        worst = std::max(worst, std::abs(cp.coefficients[i] - cplx(expected[i])));
    }
    o.require(worst <= 1e-6, "coefficient error " + fmt(worst));
    const double low = eig_hermitian(gamma).values.front();
    o.require(low > 0.0, "smallest eigenvalue " + fmt(low));
    o.detail = "max coefficient error " + fmt(worst) + ", smallest eigenvalue " + fmt(low);
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::size_t rows = 0;
    std::size_t lengths = 0;
    for (const auto& id : fixed_example_ids()) {
        if (id.rfind("table", 0) != 0) {
            continue;
        }
        ++rows;
        const Construction c = fixed_example(id);
        const Birank want = printed_birank(id);
        const Birank got = birank(c.state, 1e-9);
        o.require(got == want, id + " birank " + br(got));
        const std::size_t expected_length = std::max(want.r, want.s);
        if (c.state.dim_b == 3) {
            const LengthResult l = length_2x3(c.state, c.decomposition);
            o.require(l.length == expected_length && l.decomposition.size() == expected_length,
                      id + " length " + std::to_string(l.length));
        } else {
            o.require(c.decomposition.size() == expected_length,
                      id + " decomposition size " + std::to_string(c.decomposition.size()));
        }
        ++lengths;
    }
    o.require(rows == 11, "row count");
    o.detail = std::to_string(rows) + " rows, " + std::to_string(lengths) + " lengths";
    return o;
}

Outcome criterion3() {
    Outcome o;
    double worst = 0.0;
    for (std::size_t n = 3; n <= 6; ++n) {
        const BipartiteState rho = tura_state(n);
        const double d = max_abs_diff(partial_transpose(rho).matrix, tura_gamma_oracle(n));
        worst = std::max(worst, d);
        o.require(d <= 1e-12, "N=" + std::to_string(n) + " deviation " + fmt(d));
        const Birank b = birank(rho);
        o.require(b == Birank{n + 1, n + 1}, "N=" + std::to_string(n) + " birank " + br(b));
    }
    o.detail = "N=3..6, max entry deviation " + fmt(worst);
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::size_t count = 0;
    for (std::size_t n = 3; n <= 6; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            const std::string tag = "lemma27 N=" + std::to_string(n) + " k=" + std::to_string(k);
            try {
                const BipartiteState s = lemma27_state(n, k).state;
                o.require(classify(s).verdict == Verdict::PPT, tag + " not PPT");
                o.require(birank(s) == Birank{n + 1, n + 1 + k}, tag + " birank " + br(birank(s)));
            } catch (const std::exception& e) {
                o.require(false, tag + ": " + e.what());
            }
            ++count;
        }
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t p = 0; p < n; ++p) {
                const std::string tag =
                    "prop28 N=" + std::to_string(n) + " k=" + std::to_string(k) + " p=" + std::to_string(p);
                try {
                    const BipartiteState s = prop28_state(n, k, p).state;
                    o.require(classify(s).verdict == Verdict::PPT, tag + " not PPT");
                    o.require(birank(s) == Birank{n + 1 + p, n + 1 + k}, tag + " birank " + br(birank(s)));
                } catch (const std::exception& e) {
                    o.require(false, tag + ": " + e.what());
                }
                ++count;
            }
        }
    }
    o.detail = std::to_string(count) + " states";
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::size_t count = 0;
    for (std::size_t n = 3; n <= 6; ++n) {
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t k = j; k <= n; ++k) {
                const std::string tag = "N=" + std::to_string(n) + " j=" + std::to_string(j) + " k=" + std::to_string(k);
                try {
                    const Construction c = prop25_separable(n, j, k);
                    o.require(birank(c.state) == Birank{n + j, n + k}, tag + " birank " + br(birank(c.state)));
                    // Separability witness: the returned terms sum to the state.
                    Matrix sum(2 * n, 2 * n);
                    for (const auto& pv : c.decomposition) {
                        add_projector(sum, pv.tensor());
                    }
                    o.require(max_abs_diff(sum, c.state.matrix) <= 1e-12 * std::abs(c.state.trace()),
                              tag + " decomposition");
                } catch (const std::exception& e) {
                    o.require(false, tag + ": " + e.what());
                }
                ++count;
            }
        }
    }
    o.detail = std::to_string(count) + " mixtures";
    return o;
}

Outcome criterion6() {
    Outcome o;
    double worst = 0.0;
    std::size_t count = 0;
    for (std::size_t n = 4; n <= 6; ++n) {
        for (std::size_t k = 1; k + 1 < n; ++k) {
            const Construction c = example29_state(n, k);
            const std::size_t neg = classify(c.state).negative_count;
            o.require(neg == n - k, "N=" + std::to_string(n) + " k=" + std::to_string(k) + " negatives " +
                                        std::to_string(neg));
            double biggest = 0.0;
            double cross = 0.0;
            for (std::size_t i = 0; i < c.parts.size(); ++i) {
                biggest = std::max(biggest, spectral_norm(c.parts[i]));
                for (std::size_t j = 0; j < c.parts.size(); ++j) {
                    if (i != j) {
                        cross = std::max(cross, spectral_norm(c.parts[i] * c.parts[j]));
                    }
                }
            }
            const double rel = cross / (biggest * biggest);
            worst = std::max(worst, rel);
            o.require(rel <= 1e-12, "parts not orthogonal " + fmt(rel));
            ++count;
        }
    }
    o.detail = std::to_string(count) + " states, max ||M_i M_j|| / max ||M_i||^2 = " + fmt(worst);
    return o;
}

Outcome criterion7() {
    Outcome o;
    Rng rng(20260131);
    double worst = 0.0;
    std::size_t mismatches = 0;
    int classes[2][2] = {};
    for (int i = 0; i < 200; ++i) {
        const ThresholdCase t = random_threshold_case(rng, i);
        const SubtractionAnalysis a = subtraction_analysis(t.rho, t.pv);
        o.require(a.in_range_rho && a.in_range_gamma, "case " + std::to_string(i) + " out of range");
        const double oracle = scan_max_lambda(t.rho, t.pv.tensor());
        const double rel = std::abs(oracle - a.min_lambda()) / std::max(oracle, a.min_lambda());
        worst = std::max(worst, rel);
        o.require(rel <= 1e-6, "case " + std::to_string(i) + " threshold error " + fmt(rel));

        const double lambda = i % 3 == 2 ? 0.5 * a.min_lambda() : a.min_lambda();
        const SubtractionResult r = subtract(t.rho, t.pv, lambda);
        const Birank direct = direct_birank_after(t.rho, t.pv.tensor(), lambda);
        if (r.predicted != direct || r.observed != direct) {
            ++mismatches;
            o.require(false, "case " + std::to_string(i) + " predicted " + br(r.predicted) + " direct " + br(direct));
        } else if (r.before.r - direct.r <= 1 && r.before.s - direct.s <= 1) {
            ++classes[r.before.r - direct.r][r.before.s - direct.s];
        }
    }
    o.detail = "200 cases, max threshold error " + fmt(worst) + ", classification mismatches " +
               std::to_string(mismatches) + ", drops (0,0)/(1,0)/(0,1)/(1,1) = " + std::to_string(classes[0][0]) +
               "/" + std::to_string(classes[1][0]) + "/" + std::to_string(classes[0][1]) + "/" +
               std::to_string(classes[1][1]);
    return o;
}

Outcome criterion8() {
    Outcome o;
    Rng rng(1123);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng.index(5);
        const Separable s = random_separable(rng, 2, n, 1 + rng.index(2 * n + 3));
        const Birank b = birank(s.state);
        const double err = std::abs(g_sum(s.state, s.terms) - (static_cast<double>(b.r) - static_cast<double>(b.s)));
        worst = std::max(worst, err);
        o.require(err <= 1e-6, "trial " + std::to_string(t) + " error " + fmt(err));
    }
    o.detail = "100 decompositions, max error " + fmt(worst);
    return o;
}

Outcome criterion9() {
    Outcome o;
    Rng rng(99);
    double worst_rnc = 0.0;
    std::size_t pairs = 0;
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::string tag = "N=" + std::to_string(n) + " k=" + std::to_string(k);
            ++pairs;
            const PencilForm p = pencil_from_subspace(ces_standard(n, k), n);
            o.require(p.ces, tag + " not CES");
            if (!p.ces) {
                continue;
            }
            for (int t = 0; t < 500; ++t) {
                const BundleFiber f = fiber_at(p, rng.complex_normal(), rng.complex_normal());
                if (f.basis.cols() != n - k) {
                    o.require(false, tag + " fiber dimension " + std::to_string(f.basis.cols()));
                    break;
                }
            }
            const auto span = spanning_product_vectors(p);
            std::vector<CVector> tensors;
            for (const auto& pv : span) {
                tensors.push_back(pv.tensor());
            }
            o.require(span.size() == 2 * n - k && rank_tol(Matrix::from_columns(tensors, 2 * n)) == 2 * n - k,
                      tag + " spanning set");
            std::vector<CVector> conjugates;
            for (const auto& pv : bundle_sample(p, 4 * n)) {
                conjugates.push_back(kron(conj(pv.a), pv.b));
            }
            o.require(rank_tol(Matrix::from_columns(conjugates, 2 * n)) == 2 * n, tag + " partial-conjugate span");
            if (k + 1 != n) {
                continue;
            }
            for (int t = 0; t < 100; ++t) {
                const BundleFiber f = fiber_at(p, rng.complex_normal(), rng.complex_normal());
                const CVector x = solve_least_squares(p.coordinate_change, f.basis.col(0));
                CVector mono(n);
                for (std::size_t i = 0; i < n; ++i) {
                    mono[i] = std::pow(f.point.z, static_cast<double>(i)) *
                              std::pow(f.point.w, static_cast<double>(n - 1 - i));
                }
                const Matrix line = Matrix::from_columns(std::vector<CVector>{normalized(mono)}, n);
                const double res = projection_residual(line, x);
                worst_rnc = std::max(worst_rnc, res);
                o.require(res <= 1e-9, tag + " rational normal curve residual " + fmt(res));
            }
        }
    }
    o.detail = std::to_string(pairs) + " (N,k) pairs, max rational-normal-curve residual " + fmt(worst_rnc);
    return o;
}

Outcome criterion10() {
    Outcome o;
    const Example21 ex = example21_sigma();
    o.require(ex.kernel.size() == 6, "found " + std::to_string(ex.kernel.size()) + " kernel product vectors");
    std::size_t independent = 0;
    for (std::size_t skip = 0; skip < ex.kernel.size(); ++skip) {
        std::vector<CVector> five;
        for (std::size_t i = 0; i < ex.kernel.size(); ++i) {
            if (i != skip) {
                five.push_back(ex.kernel[i].tensor());
            }
        }
        independent += rank_tol(Matrix::from_columns(five, 9)) == 5 ? 1 : 0;
    }
    o.require(independent == 6, "dependent five-subset");
    const Example21Check c = example21_check(ex.kernel);
    o.require(c.sigma_birank == Birank{5, 5}, "sigma birank " + br(c.sigma_birank));
    o.require(c.residual_ppt, "residual not PPT");
    o.require(c.c1 < 0.0, "c1 = " + fmt(c.c1));
    o.detail = "6 vectors, sigma birank " + br(c.sigma_birank) + ", c = " + fmt(c.c) + ", c1 = " + fmt(c.c1) +
               ", residual birank " + br(c.residual_birank);
    return o;
}

Outcome criterion11() {
    Outcome o;
    Rng rng(1414);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const double p0 = rng.uniform(0.05, 10.0);
        const double p1 = rng.uniform(0.05, 10.0);
        const double p2 = rng.uniform(0.05, 10.0);
        const Lemma14Match m = lemma14_match(p0, p1, p2);
        const Matrix got = m.v * lemma14_family(m.a, m.b, m.d).matrix * m.v.adjoint();
        const Matrix want = lemma14_target(p0, p1, p2).matrix;
        const double rel = max_abs_diff(got, want) / want.max_abs();
        worst = std::max(worst, rel);
        o.require(rel <= 1e-9, "trial " + std::to_string(t) + " error " + fmt(rel));
    }
    o.detail = "50 weight triples, max relative error " + fmt(worst);
    return o;
}

Outcome criterion12() {
    Outcome o;
    Rng rng(4242);
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        const std::size_t m = 2 + rng.index(2);
        const std::size_t n = 2 + rng.index(5);
        const BipartiteState rho = random_state(rng, m, n, 1 + rng.index(m * n));
        const double scale = rho.matrix.max_abs();
        const BipartiteState gamma = partial_transpose(rho);
        o.require(max_abs_diff(partial_transpose(gamma).matrix, rho.matrix) <= 1e-13 * scale, "involution");
        o.require(std::abs(gamma.trace() - rho.trace()) <= 1e-12 * rho.trace(), "trace");
        o.require(max_abs_diff(partial_trace(gamma, Side::B), partial_trace(rho, Side::B)) <= 1e-13 * scale,
                  "reduced B");
        o.require(max_abs_diff(partial_trace(gamma, Side::A), partial_trace(rho, Side::A).transpose()) <=
                      1e-13 * scale,
                  "reduced A");
    }
    int ilo = 0;
    while (ilo < trials) {
        const std::size_t n = 2 + rng.index(4);
        const Separable sep = random_separable(rng, 2, n, 1 + rng.index(2 * n + 2));
        if (spectrum_gap(sep.state.matrix) < 1e-2 || spectrum_gap(partial_transpose(sep.state).matrix) < 1e-2) {
            continue;
        }
        ++ilo;
        const double per_factor = std::sqrt(1e3);
        const IloResult r = apply_ilo(sep.state, rng.invertible(2, per_factor), rng.invertible(n, per_factor));
        o.require(birank(r.state) == birank(sep.state), "ILO trial " + std::to_string(ilo));
    }
    for (int t = 0; t < trials; ++t) {
        const DirectSumCase c = random_direct_sum(rng);
        const BipartiteState rho = c.first + c.second;
        const BipartiteState parts[] = {c.first, c.second};
        const BipartiteState gparts[] = {partial_transpose(c.first), partial_transpose(c.second)};
        o.require(verify_direct_sum(rho, parts, Side::B), "direct sum " + std::to_string(t));
        o.require(verify_direct_sum(partial_transpose(rho), gparts, Side::B), "direct sum PT " + std::to_string(t));
    }
    o.detail = std::to_string(trials) + " instances per suite (involution, trace identities, ILO, direct sum)";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                         criterion5, criterion6, criterion7,  criterion8,
                                                         criterion9, criterion10, criterion11, criterion12};
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.failures = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %zu: %s (%.1fs)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), secs,
                    o.failures.empty() ? "" : " failures: ", o.failures.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of %zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
                total);
    return failed == 0 ? 0 : 1;
}
