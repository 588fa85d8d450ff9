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


#include "pptlab/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pptlab/errors.hpp"
#include "pptlab/pencil.hpp"
#include "pptlab/random.hpp"

namespace pptlab {
namespace {

ProductVector pv(CVector a, CVector b) { return {std::move(a), std::move(b)}; }

CVector ket(std::size_t n, std::size_t i) { return basis_vector(n, i); }

BipartiteState sum_of_projectors(std::size_t m, std::size_t n, const std::vector<CVector>& vs) {
    Matrix out(m * n, m * n);
    for (const auto& v : vs) {
        out += Matrix::outer(v);
    }
    return BipartiteState(m, n, out.hermitian_part());
}

std::vector<ProductVector> basis_decomposition(std::size_t m, std::size_t n,
                                               std::initializer_list<std::pair<std::size_t, std::size_t>> idx) {
    std::vector<ProductVector> out;
    for (const auto& [i, j] : idx) {
        out.push_back(pv(ket(m, i), ket(n, j)));
    }
    return out;
}

Construction separable_row(std::string id, std::size_t m, std::size_t n, std::vector<ProductVector> terms,
                           Birank br, std::size_t length) {
    Construction c;
    c.family = std::move(id);
    c.state = mixture(terms);
    c.decomposition = std::move(terms);
    c.cert.birank = br;
    c.cert.ppt = true;
    c.cert.entangled = false;
    c.cert.length = length;
    c.params = {{"id", c.family}, {"dims", {m, n}}};
    return c;
}

// 2|00><00| + |11><11| + (|01> + |10>)(<01| + <10|) as printed, with the
// three-term cube-root decomposition.
Construction example20() {
    const CVector k00 = kron(ket(2, 0), ket(2, 0));
    const CVector k11 = kron(ket(2, 1), ket(2, 1));
    CVector bell = kron(ket(2, 0), ket(2, 1));
    axpy(1.0, kron(ket(2, 1), ket(2, 0)), bell);
    Construction c;
    c.family = "example20";
    c.state = sum_of_projectors(2, 2, {scaled(k00, std::sqrt(2.0)), k11, bell});
    c.decomposition.push_back(pv(ket(2, 0), ket(2, 0)));
    const double w = 1.0 / std::sqrt(3.0);
    for (int k = 0; k < 3; ++k) {
        const cplx zk = std::pow(zeta3(), k);
        c.decomposition.push_back(pv({w, w * zk}, {1.0, zk}));
    }
    c.cert.birank = Birank{3, 4};
    c.cert.entangled = false;
    c.cert.length = 4;
    c.params = {{"id", "example20"}, {"dims", {2, 2}}};
    return c;
}

// |00><00| + |02><02| + 2|11><11| + (|01> + |10>)(<01| + <10|) on 2 (x) 3.
Construction example13(bool extended) {
    std::vector<CVector> vs{kron(ket(2, 0), ket(3, 0)), kron(ket(2, 0), ket(3, 2)),
                            scaled(kron(ket(2, 1), ket(3, 1)), std::sqrt(2.0))};
    CVector mixed = kron(ket(2, 0), ket(3, 1));
    axpy(1.0, kron(ket(2, 1), ket(3, 0)), mixed);
    vs.push_back(mixed);
    if (extended) {
        vs.push_back(kron(ket(2, 1), ket(3, 2)));
    }
    Construction c;
    c.family = extended ? "example13-ext" : "example13";
    c.state = sum_of_projectors(2, 3, vs);
    // The qubit block is example 20 with both local labels swapped.
    c.decomposition.push_back(pv(ket(2, 1), ket(3, 1)));
    const double w = 1.0 / std::sqrt(3.0);
    for (int k = 0; k < 3; ++k) {
        const cplx zk = std::pow(zeta3(), k);
        c.decomposition.push_back(pv({w * zk, w}, {zk, 1.0, 0.0}));
    }
    c.decomposition.push_back(pv(ket(2, 0), ket(3, 2)));
    if (extended) {
        c.decomposition.push_back(pv(ket(2, 1), ket(3, 2)));
    }
    c.cert.birank = extended ? Birank{5, 6} : Birank{4, 5};
    c.cert.entangled = false;
    c.cert.length = extended ? 6 : 5;
    c.params = {{"id", c.family}, {"dims", {2, 3}}};
    return c;
}

ProductVector table2_f(cplx x) { return pv({(1.0 + x) / (x - 1.0), 1.0}, {-1.0, (x - 1.0) / (x + 1.0), x - 1.0}); }

Construction example26() {
    const auto k = [](std::size_t i, std::size_t j) { return kron(ket(2, i), ket(3, j)); };
    const CVector psi1 = scaled(k(0, 0), 2.0);
    CVector psi2 = k(1, 0);
    axpy(2.0, k(1, 1), psi2);
    CVector psi3 = scaled(k(0, 1), 2.0);
    axpy(1.0, k(0, 2), psi3);
    axpy(1.0, k(1, 2), psi3);
    CVector psi4 = k(0, 2);
    axpy(1.0, k(1, 0), psi4);
    axpy(-1.0, k(1, 1), psi4);
    axpy(-1.0, k(1, 2), psi4);
    Construction c;
    c.family = "example26";
    c.state = sum_of_projectors(2, 3, {psi1, psi2, psi3, psi4});
    c.cert.birank = Birank{4, 6};
    c.cert.entangled = false;
    c.cert.length = 6;
    c.params = {{"id", "example26"}, {"dims", {2, 3}}};
    return c;
}

Construction table2_46() {
    const CVector e{1.0, 1.0};
    const CVector f{1.0, -1.0};
    const CVector g{1.0, 1.0, 1.0};
    std::vector<ProductVector> terms{pv(ket(2, 0), ket(3, 0)), pv(ket(2, 1), ket(3, 1)), pv(e, ket(3, 2)), pv(f, g),
                                     table2_f(cplx(0.0, 1.0)), table2_f(cplx(0.0, -1.0))};
    Construction c = separable_row("table2-(4,6)", 2, 3, std::move(terms), {4, 6}, 6);
    if (birank(c.state) != Birank{4, 6}) {
        // The printed vectors are the contract only through their birank;
        // fall back to the other published (4, 6) state.
        Construction alt = example26();
        alt.family = c.family;
        alt.params = {{"id", c.family}, {"dims", {2, 3}}, {"fallback", "example26"}};
        return alt;
    }
    return c;
}

void require(bool ok, const char* what) {
    if (!ok) {
        throw ContractViolation(what);
    }
}

bool independent_modulo(const Matrix& range, const std::vector<CVector>& extra) {
    Matrix stacked = range;
    for (const auto& v : extra) {
        const CVector u = normalized(v);
        stacked = hstack(stacked, Matrix::from_columns(std::span<const CVector>(&u, 1), u.size()));
    }
    return rank_tol(stacked) == range.cols() + extra.size();
}

// Integer nodes first, then the 1 + i/7 spacing, then a spread centered on
// zero. |phi(a)| grows like a^(N-1), so the later lists keep the rank gap
// above the tolerance when k approaches N - 1.
std::vector<std::vector<double>> node_attempts(std::size_t count) {
    std::vector<std::vector<double>> out(3);
    for (std::size_t i = 1; i <= count; ++i) {
        const double x = static_cast<double>(i);
        out[0].push_back(x);
        out[1].push_back(1.0 + x / 7.0);
        out[2].push_back(1.5 * (2.0 * x - static_cast<double>(count) - 1.0) / static_cast<double>(count));
    }
    return out;
}

}  // namespace

cplx zeta3() { return {-0.5, std::sqrt(3.0) / 2.0}; }

std::vector<std::string> fixed_example_ids() {
    return {"table1-(2,2)", "table1-(3,3)", "table1-(3,4)", "table1-(4,4)", "table2-(3,3)",
            "table2-(4,4)", "table2-(4,5)", "table2-(4,6)", "table2-(5,5)", "table2-(5,6)",
            "table2-(6,6)", "example13",    "example13-ext", "example20",   "example26"};
}

Construction fixed_example(std::string_view id) {
    const CVector e{1.0, 1.0};
    if (id == "table1-(2,2)") {
        return separable_row(std::string(id), 2, 2, basis_decomposition(2, 2, {{0, 0}, {1, 1}}), {2, 2}, 2);
    }
    if (id == "table1-(3,3)") {
        auto terms = basis_decomposition(2, 2, {{0, 0}, {1, 1}});
        terms.push_back(pv(e, e));
        return separable_row(std::string(id), 2, 2, std::move(terms), {3, 3}, 3);
    }
    if (id == "table1-(3,4)" || id == "example20") {
        Construction c = example20();
        c.family = std::string(id);
        c.params["id"] = c.family;
        return c;
    }
    if (id == "table1-(4,4)") {
        return separable_row(std::string(id), 2, 2, basis_decomposition(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}),
                             {4, 4}, 4);
    }
    if (id == "table2-(3,3)") {
        return separable_row(std::string(id), 2, 3, basis_decomposition(2, 3, {{0, 0}, {1, 1}, {1, 2}}), {3, 3}, 3);
    }
    if (id == "table2-(4,4)") {
        return separable_row(std::string(id), 2, 3, basis_decomposition(2, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}}),
                             {4, 4}, 4);
    }
    if (id == "table2-(4,5)" || id == "example13") {
        Construction c = example13(false);
        c.family = std::string(id);
        c.params["id"] = c.family;
        return c;
    }
    if (id == "table2-(5,6)" || id == "example13-ext") {
        Construction c = example13(true);
        c.family = std::string(id);
        c.params["id"] = c.family;
        return c;
    }
    if (id == "table2-(4,6)") {
        return table2_46();
    }
    if (id == "table2-(5,5)") {
        return separable_row(std::string(id), 2, 3,
                             basis_decomposition(2, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}}), {5, 5}, 5);
    }
    if (id == "table2-(6,6)") {
        return separable_row(std::string(id), 2, 3,
                             basis_decomposition(2, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}), {6, 6},
                             6);
    }
    if (id == "example26") {
        return example26();
    }
    throw ContractViolation("fixed_example: unknown id '" + std::string(id) + "'");
}

BipartiteState prop2_sigma(double a, double b, double c, double d) {
    require(a > 0 && b > 0 && d > 0 && c >= 0, "prop2_sigma: need a, b, d > 0 and c >= 0");
    // Rows of C; columns ordered |i j> with i the block index.
    const double c0[4][3] = {{0, a, b}, {0, 0, 1}, {0, 0, 0}, {0, 0, 0}};
    const double c1[4][3] = {{0, 0, 0}, {0, 0, c}, {0, 0, 1}, {1, 0, -1.0 / d}};
    const double c2[4][3] = {{0, -1.0 / b, 0}, {0, 1, 0}, {1, -c, 0}, {d, 0, 0}};
    Matrix cm(4, 9);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t j = 0; j < 3; ++j) {
            cm(r, j) = c0[r][j];
            cm(r, 3 + j) = c1[r][j];
            cm(r, 6 + j) = c2[r][j];
        }
    }
    return BipartiteState(3, 3, (cm.adjoint() * cm).hermitian_part());
}

BipartiteState lemma14_family(double a, double b, double d) { return prop2_sigma(a, b, 0.0, d); }

Lemma14Match lemma14_match(double p0, double p1, double p2) {
    require(p0 > 0 && p1 > 0 && p2 > 0, "lemma14_match: weights must be positive");
    Lemma14Match m;
    m.b = std::sqrt(p0);
    m.d = std::sqrt(p1 / p2);
    const double b2 = m.b * m.b;
    const double d2 = m.d * m.d;
    m.a = std::sqrt(p1 * d2 / (b2 * b2 * std::pow((1.0 + d2) / (1.0 + b2), 3.0)));
    const double ab = m.a * m.b;
    m.va = Matrix{{(1.0 + b2) / ab, 0.0, 0.0}, {0.0, 0.0, -1.0}, {0.0, (1.0 + d2) / m.d, -1.0}};
    m.vb = Matrix{{0.0, 1.0 + b2, 0.0}, {-ab * (1.0 + d2) / m.d, 1.0 + b2, -ab}, {0.0, 1.0 + b2, -ab}};
    m.v = kron(m.va, m.vb);
    m.v *= m.b * std::pow(1.0 + b2, -1.5);
    return m;
}

BipartiteState lemma14_target(double p0, double p1, double p2) {
    require(p0 > 0 && p1 > 0 && p2 > 0, "lemma14_target: weights must be positive");
    const double p[3] = {p0, p1, p2};
    std::vector<CVector> vs;
    for (std::size_t i = 0; i < 3; ++i) {
        vs.push_back(scaled(kron(ket(3, i), ket(3, i)), std::sqrt(p[i])));
    }
    vs.push_back(CVector(9, 1.0));
    return sum_of_projectors(3, 3, vs);
}

std::vector<ProductVector> lemma14_decomposition(double a, double b, double d) {
    require(a > 0 && b > 0 && d > 0, "lemma14_decomposition: parameters must be positive");
    const double b2 = b * b;
    const double d2 = d * d;
    const double p[4] = {1.0 / (1.0 + b2), 1.0 / (1.0 + d2), 1.0 / (d2 * (1.0 + d2)), 1.0 / (b2 * (1.0 + b2))};
    std::vector<ProductVector> v{pv(ket(3, 0), {0.0, a * b, 1.0 + b2}), pv({0.0, d, 1.0 + d2}, ket(3, 0)),
                                 pv(ket(3, 1), {d, 0.0, -(1.0 + d2)}), pv({a * b, 0.0, -(1.0 + b2)}, ket(3, 1))};
    for (std::size_t i = 0; i < 4; ++i) {
        v[i].a = scaled(v[i].a, std::sqrt(p[i]));
    }
    return v;
}

Example21 example21_sigma(std::uint64_t seed) {
    Example21 out;
    out.kernel_state = prop2_sigma(1, 1, 1, 1);
    const Matrix ker = kernel_basis(out.kernel_state.matrix);
    std::vector<CVector> basis;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        basis.push_back(ker.col(c));
    }
    const Subspace3x3Result found = product_vectors_in_subspace_3x3(basis, seed);
    if (found.non_generic || found.vectors.size() != 6) {
        throw NumericalDegeneracy("example21_sigma: expected six kernel product vectors, found " +
                                  std::to_string(found.vectors.size()));
    }
    out.kernel = found.vectors;
    out.sigma = mixture(out.kernel);
    return out;
}

BipartiteState tura_state(std::size_t n) {
    require(n >= 3, "tura_state: need N >= 3");
    const auto k = [n](std::size_t i, std::size_t j) { return kron(ket(2, i), ket(n, j)); };
    std::vector<CVector> vs;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        CVector v = k(0, i);
        axpy(1.0, k(1, i + 1), v);
        vs.push_back(v);
    }
    vs.push_back(k(1, 0));
    CVector last = k(0, 0);
    axpy(std::sqrt(3.0), k(0, n - 1), last);
    vs.push_back(scaled(last, std::sqrt(0.5)));
    return sum_of_projectors(2, n, vs);
}

ProductVector tura_phi(std::size_t n, cplx a) {
    require(n >= 3, "tura_phi: need N >= 3");
    CVector f(n);
    for (std::size_t j = 0; j < n; ++j) {
        f[j] = std::pow(a, static_cast<int>(n - 1 - j));
    }
    f[0] += 1.0 / std::sqrt(3.0);
    return pv({1.0, a}, f);
}

ProductVector tura_psi(std::size_t n, cplx a) {
    ProductVector p = tura_phi(n, a);
    std::reverse(p.b.begin(), p.b.end());
    return p;
}

Construction lemma27_state(std::size_t n, std::size_t k, double epsilon, std::vector<double> a_list) {
    require(n >= 3, "lemma27_state: need N >= 3");
    require(k <= n - 1, "lemma27_state: need k <= N - 1");
    require(epsilon > 0, "lemma27_state: epsilon must be positive");
    const BipartiteState rho = tura_state(n);
    const Matrix gamma_range = range_basis(partial_transpose(rho).matrix);

    const auto vectors = [n](const std::vector<double>& as) {
        std::vector<CVector> out;
        for (double a : as) {
            out.push_back(tura_phi(n, a).tensor());
        }
        return out;
    };
    const bool user_list = !a_list.empty();
    if (user_list && a_list.size() != k) {
        throw ContractViolation("lemma27_state: a_list must have k entries");
    }
    const std::vector<std::vector<double>> attempts =
        user_list ? std::vector<std::vector<double>>{a_list} : node_attempts(k);

    const Birank target{n + 1, n + 1 + k};
    for (std::size_t attempt = 0; attempt < attempts.size(); ++attempt) {
        const auto& as = attempts[attempt];
        const auto phis = vectors(as);
        if (!independent_modulo(gamma_range, phis)) {
            continue;
        }
        for (double eps = epsilon; eps >= 1e-8; eps /= 2.0) {
            Matrix m = rho.matrix;
            for (const auto& v : phis) {
                Matrix p = Matrix::outer(v);
                p *= eps;
                m += p;
            }
            BipartiteState st(2, n, m.hermitian_part());
            if (classify(st).verdict == Verdict::PPT && birank(st) == target) {
                Construction c;
                c.family = "lemma27";
                c.state = std::move(st);
                c.cert.birank = target;
                c.cert.ppt = true;
                // PPT states on 2 (x) 3 are separable.
                c.cert.entangled = n >= 4;
                c.params = {{"N", n}, {"k", k}, {"epsilon", eps}, {"a", as}, {"node_list", attempt}};
                return c;
            }
        }
    }
    throw NumericalDegeneracy("lemma27_state: epsilon floor reached without a PPT state of the target birank");
}

Construction prop28_state(std::size_t n, std::size_t k, std::size_t p, double epsilon, double epsilon_prime) {
    require(n >= 3, "prop28_state: need N >= 3");
    require(k <= n - 1 && p <= n - 1, "prop28_state: need k, p <= N - 1");
    require(epsilon_prime > 0, "prop28_state: epsilon' must be positive");
    const auto vectors = [n](const std::vector<double>& as) {
        std::vector<CVector> out;
        for (double a : as) {
            out.push_back(tura_psi(n, a).tensor());
        }
        return out;
    };
    std::vector<std::vector<double>> base_lists = node_attempts(k);
    if (k == 0) {
        base_lists.resize(1);
    }
    const Birank target{n + 1 + p, n + 1 + k};
    for (const auto& base_nodes : base_lists) {
        Construction base;
        try {
            base = lemma27_state(n, k, epsilon, base_nodes);
        } catch (const NumericalDegeneracy&) {
            continue;
        }
        const Matrix rho_range = range_basis(base.state.matrix);
        const std::vector<std::vector<double>> attempts = node_attempts(p);
        for (std::size_t attempt = 0; attempt < attempts.size(); ++attempt) {
            const auto& as = attempts[attempt];
            const auto psis = vectors(as);
            if (!independent_modulo(rho_range, psis)) {
                continue;
            }
            for (double eps = epsilon_prime; eps >= 1e-8; eps /= 2.0) {
                Matrix m = base.state.matrix;
                for (const auto& v : psis) {
                    Matrix proj = Matrix::outer(v);
                    proj *= eps;
                    m += proj;
                }
                BipartiteState st(2, n, m.hermitian_part());
                if (classify(st).verdict == Verdict::PPT && birank(st) == target) {
                    Construction c;
                    c.family = "prop28";
                    c.state = std::move(st);
                    c.cert.birank = target;
                    c.cert.ppt = true;
                    c.cert.entangled = n >= 4;
                    c.params = base.params;
                    c.params["p"] = p;
                    c.params["epsilon_prime"] = eps;
                    c.params["a_prime"] = as;
                    c.params["node_list_prime"] = attempt;
                    return c;
                }
            }
        }
    }
    throw NumericalDegeneracy("prop28_state: epsilon' floor reached without a PPT state of the target birank");
}

Construction prop25_separable(std::size_t n, std::size_t j, std::size_t k) {
    require(n >= 2, "prop25_separable: need N >= 2");
    require(1 <= j && j <= k && k <= n, "prop25_separable: need 1 <= j <= k <= N");
    Construction c;
    c.family = "prop25";
    c.params = {{"N", n}, {"j", j}, {"k", k}};
    c.cert.birank = Birank{n + j, n + k};
    c.cert.ppt = true;
    c.cert.entangled = false;
    if (j == n) {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                c.decomposition.push_back(pv(ket(2, a), ket(n, b)));
            }
        }
        c.state = mixture(c.decomposition);
        return c;
    }
    const auto ces = ces_standard(n, n - j);
    const PencilForm pencil = pencil_from_subspace(ces, n);
    std::vector<ProductVector> members = spanning_product_vectors(pencil);

    std::vector<CVector> conj_span;
    const auto residual = [&conj_span](const ProductVector& q) {
        const CVector v = normalized(q.partial_conjugate());
        CVector r = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : conj_span) {
                axpy(-dot(u, r), u, r);
            }
        }
        return r;
    };
    const auto grow = [&](const ProductVector& q) {
        const CVector r = residual(q);
        if (norm(r) <= 1e-4) {
            return false;
        }
        conj_span.push_back(normalized(r));
        return true;
    };
    for (const auto& q : members) {
        grow(q);
    }
    if (conj_span.size() > n + k) {
        throw NumericalDegeneracy("prop25_separable: spanning set already exceeds the target partial-conjugate rank");
    }
    // Each round adds the sampled member farthest from the current span.
    const std::vector<ProductVector> sample = bundle_sample(pencil, 512);
    while (conj_span.size() < n + k) {
        std::size_t best = sample.size();
        double best_res = 1e-4;
        for (std::size_t i = 0; i < sample.size(); ++i) {
            const double r = norm(residual(sample[i]));
            if (r > best_res) {
                best_res = r;
                best = i;
            }
        }
        if (best == sample.size()) {
            break;
        }
        grow(sample[best]);
        members.push_back(sample[best]);
    }
    if (conj_span.size() != n + k) {
        throw NumericalDegeneracy("prop25_separable: partial-conjugate span target unreachable");
    }
    c.decomposition = std::move(members);
    c.state = mixture(c.decomposition);
    return c;
}

std::vector<double> example29_default_c(std::size_t n, std::size_t k) {
    require(n >= 3 && k >= 1 && k + 1 < n, "example29: need 1 <= k < N - 1");
    std::vector<double> c(n - 1);
    for (std::size_t i = 1; i <= n - 2; ++i) {
        c[i - 1] = i <= k ? 0.5
                          : 0.5 + 0.4 * static_cast<double>(i - k) / static_cast<double>(n - 1 - k);
    }
    c[n - 2] = 1.0;
    return c;
}

Construction example29_state(std::size_t n, std::size_t k, std::vector<double> c_list) {
    require(n >= 3 && k >= 1 && k + 1 < n, "example29: need 1 <= k < N - 1");
    if (c_list.empty()) {
        c_list = example29_default_c(n, k);
    }
    require(c_list.size() == n - 1, "example29: need N - 1 coefficients");
    require(c_list[0] > 0, "example29: coefficients must be positive");
    for (std::size_t i = 1; i < k; ++i) {
        require(c_list[i] == c_list[0], "example29: c_1 = ... = c_k violated");
    }
    for (std::size_t i = k; i + 1 < n - 1; ++i) {
        require(c_list[i] > c_list[i - 1], "example29: c_k < ... < c_{N-2} violated");
    }
    require(c_list[n - 2] == 1.0, "example29: c_{N-1} must be 1");
    // c(i) is the paper's c_i (1-based).
    const auto c = [&c_list](std::size_t i) { return c_list[i - 1]; };
    const auto k2 = [n](std::size_t i, std::size_t j) { return kron(ket(2, i), ket(n, j)); };

    std::vector<CVector> vs;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        CVector v = k2(0, i);
        axpy(c(i + 1), k2(1, i + 1), v);
        vs.push_back(v);
    }
    Construction out;
    out.family = "example29";
    out.state = sum_of_projectors(2, n, vs);

    const std::size_t dim = 2 * n;
    const auto idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
    const auto block = [&](std::size_t p, std::size_t q, double dp, double dq, double off) {
        Matrix m(dim, dim);
        m(p, p) = dp;
        m(q, q) = dq;
        m(p, q) = off;
        m(q, p) = off;
        return m;
    };
    for (std::size_t i = 1; i + 2 < n; ++i) {
        out.parts.push_back(block(idx(0, i + 1), idx(1, i), 1.0, c(i) * c(i), c(i + 1)));
    }
    out.parts.push_back(block(idx(0, 1), idx(1, 0), 1.0, 0.0, c(1)));
    out.parts.push_back(block(idx(0, n - 1), idx(1, n - 2), 0.0, c(n - 2) * c(n - 2), 1.0));
    out.parts.push_back(block(idx(0, 0), idx(1, n - 1), 1.0, 1.0, 0.0));

    out.cert.ppt = false;
    out.cert.negative_count = n - k;
    out.params = {{"N", n}, {"k", k}, {"c", c_list}};
    return out;
}

Construction example29_single_negative(std::size_t n) {
    require(n >= 2, "example29_single_negative: need N >= 2");
    CVector bell = kron(ket(2, 0), ket(n, 0));
    axpy(1.0, kron(ket(2, 1), ket(n, 1)), bell);
    Matrix m = Matrix::outer(bell);
    for (std::size_t j = 0; j < n; ++j) {
        m(j, j) += 1.0;
    }
    Construction out;
    out.family = "example29-single";
    out.state = BipartiteState(2, n, m);
    out.cert.ppt = false;
    out.cert.negative_count = 1;
    out.params = {{"N", n}};
    return out;
}

}  // namespace pptlab
