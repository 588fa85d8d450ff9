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


#include <algorithm>
#include <cmath>
#include <string>

#include "cli.hpp"
#include "pptlab/atlas.hpp"
#include "pptlab/errors.hpp"
#include "pptlab/pencil.hpp"
#include "pptlab/random.hpp"
#include "pptlab/surgery.hpp"

namespace pptlab::cli {
namespace {

using nlohmann::json;

json birank_json(const Birank& b) { return json::array({b.r, b.s}); }

std::string nk(std::size_t n, std::size_t k) { return "N=" + std::to_string(n) + " k=" + std::to_string(k); }

class Report {
   public:
    void exact(std::string name, std::string location, const json& expected, const json& observed) {
        add(std::move(name), std::move(location), expected, observed, 0.0, expected == observed);
    }
    void at_most(std::string name, std::string location, double observed, double tol) {
        add(std::move(name), std::move(location), json{{"max", tol}}, observed, tol, observed <= tol);
    }
    void error(std::string name, std::string location, const std::exception& e) {
        add(std::move(name), std::move(location), "no error", std::string("error: ") + e.what(), 0.0, false);
    }
    std::vector<CheckRecord> take() { return std::move(records_); }

   private:
    void add(std::string name, std::string location, json expected, json observed, double tol, bool pass) {
        records_.push_back({std::move(name), std::move(location), std::move(expected), std::move(observed), tol, pass});
    }
    std::vector<CheckRecord> records_;
};

// Runs f, turning an exception into a failed record.
template <class F>
void guarded(Report& rep, const std::string& name, const std::string& location, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        rep.error(name, location, e);
    }
}

std::string location_of(const std::string& id) {
    if (id.rfind("table1-", 0) == 0) {
        return "Table I " + id.substr(7);
    }
    if (id.rfind("table2-", 0) == 0) {
        return "Table II " + id.substr(7);
    }
    if (id == "example13-ext") {
        return "Example 13, extended state";
    }
    return "Example " + id.substr(7);
}

// The partial transpose of tura_state(N), assembled term by term.
Matrix tura_gamma_expected(std::size_t n) {
    Matrix m(2 * n, 2 * n);
    const auto add = [&m](const CVector& v, double w) {
        Matrix p = Matrix::outer(v);
        p *= w;
        m += p;
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        CVector v(2 * n);
        v[i + 1] = 1.0;
        v[n + i] = 1.0;
        add(v, 1.0);
    }
    add(basis_vector(2 * n, 2 * n - 1), 1.0);
    CVector last(2 * n);
    last[0] = std::sqrt(3.0);
    last[n - 1] = 1.0;
    add(last, 0.5);
    return m;
}

void fixed_examples(Report& rep, double tau) {
    for (const auto& id : fixed_example_ids()) {
        const std::string loc = location_of(id);
        guarded(rep, id, loc, [&] {
            const Construction c = fixed_example(id);
            rep.exact(id + " birank", loc, birank_json(*c.cert.birank), birank_json(birank(c.state, tau)));
            if (c.cert.length && c.state.dim_a == 2 && c.state.dim_b <= 3) {
                const LengthResult l = length_2x3(c.state, c.decomposition, tau);
                rep.exact(id + " length", loc, *c.cert.length, l.length);
            }
        });
    }
}

void example26(Report& rep) {
    guarded(rep, "example26", "Example 26", [&] {
        const Matrix gamma = partial_transpose(fixed_example("example26").state).matrix;
        const CharPoly cp = char_poly(gamma);
        const double expected[] = {1, -19, 133, -413, 520, -148, 4};
        double worst = cp.coefficients.size() == 7 ? 0.0 : INFINITY;
        for (std::size_t i = 0; i < std::min<std::size_t>(7, cp.coefficients.size()); ++i) {
            worst = std::max(worst, std::abs(cp.coefficients[i] - cplx(expected[i])));
        }
        rep.exact("example26 char poly rounded", "Example 26", json(std::vector<long long>{1, -19, 133, -413, 520, -148, 4}),
                  json(cp.nearest_integers));
        rep.at_most("example26 char poly max coefficient error", "Example 26", worst, 1e-6);
        rep.exact("example26 partial transpose positive definite", "Example 26", true,
                  eig_hermitian(gamma).values.front() > 0.0);
    });
}

void tura(Report& rep, double tau) {
    for (std::size_t n = 3; n <= 6; ++n) {
        const std::string name = "tura N=" + std::to_string(n);
        guarded(rep, name, "tura state", [&] {
            const BipartiteState rho = tura_state(n);
            rep.at_most(name + " partial transpose", "tura state, partial transpose",
                        max_abs_diff(partial_transpose(rho).matrix, tura_gamma_expected(n)), 1e-12);
            rep.exact(name + " birank", "tura state", birank_json({n + 1, n + 1}), birank_json(birank(rho, tau)));
        });
    }
}

void lemma27_prop28(Report& rep, double tau) {
    for (std::size_t n = 3; n <= 6; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            const std::string name = "lemma27 " + nk(n, k);
            guarded(rep, name, "Lemma 27", [&] {
                const Construction c = lemma27_state(n, k);
                rep.exact(name + " birank", "Lemma 27", birank_json({n + 1, n + 1 + k}),
                          birank_json(birank(c.state, tau)));
                rep.exact(name + " PPT", "Lemma 27", true, classify(c.state, tau).verdict == Verdict::PPT);
            });
        }
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t p = 0; p < n; ++p) {
                const std::string name = "prop28 " + nk(n, k) + " p=" + std::to_string(p);
                guarded(rep, name, "Proposition 28", [&] {
                    const Construction c = prop28_state(n, k, p);
                    const bool ppt = classify(c.state, tau).verdict == Verdict::PPT;
                    const Birank br = birank(c.state, tau);
                    rep.exact(name + " birank, PPT", "Proposition 28", json::array({n + 1 + p, n + 1 + k, true}),
                              json::array({br.r, br.s, ppt}));
                });
            }
        }
    }
}

void prop25(Report& rep, double tau) {
    for (std::size_t n = 3; n <= 6; ++n) {
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t k = j; k <= n; ++k) {
                const std::string name = "prop25 N=" + std::to_string(n) + " j=" + std::to_string(j) +
                                         " k=" + std::to_string(k);
                guarded(rep, name, "Proposition 25", [&] {
                    const Construction c = prop25_separable(n, j, k);
                    rep.exact(name + " birank", "Proposition 25", birank_json({n + j, n + k}),
                              birank_json(birank(c.state, tau)));
                });
            }
        }
    }
}

void example29(Report& rep, double tau) {
    for (std::size_t n = 4; n <= 6; ++n) {
        for (std::size_t k = 1; k + 1 < n; ++k) {
            const std::string name = "example29 " + nk(n, k);
            guarded(rep, name, "Example 29", [&] {
                const Construction c = example29_state(n, k);
                rep.exact(name + " negative eigenvalues", "Example 29", n - k, classify(c.state, tau).negative_count);
                double biggest = 0.0;
                double cross = 0.0;
                for (std::size_t i = 0; i < c.parts.size(); ++i) {
                    biggest = std::max(biggest, singular_values(c.parts[i]).front());
                    for (std::size_t j = 0; j < c.parts.size(); ++j) {
                        if (i != j) {
                            cross = std::max(cross, singular_values(c.parts[i] * c.parts[j]).front());
                        }
                    }
                }
                rep.at_most(name + " parts orthogonal", "Example 29", cross, 1e-12 * biggest * biggest);
            });
        }
    }
    guarded(rep, "example29 printed", "Example 29", [&] {
        rep.exact("example29 N=4 k=1 c=(0.5,0.8,1) negative eigenvalues", "Example 29", 3,
                  classify(example29_state(4, 1, {0.5, 0.8, 1.0}).state, tau).negative_count);
        rep.exact("example29 single negative eigenvalue", "Example 29", 1,
                  classify(example29_single_negative(4).state, tau).negative_count);
    });
}

void example21(Report& rep, double tau, std::uint64_t seed) {
    guarded(rep, "example21", "Example 21", [&] {
        const Example21 ex = example21_sigma(seed);
        rep.exact("example21 kernel product vectors", "Example 21", 6, ex.kernel.size());
        std::size_t independent = 0;
        for (std::size_t skip = 0; skip < ex.kernel.size(); ++skip) {
            std::vector<CVector> five;
            for (std::size_t i = 0; i < ex.kernel.size(); ++i) {
                if (i != skip) {
                    five.push_back(ex.kernel[i].tensor());
                }
            }
            independent += rank_tol(Matrix::from_columns(five, 9), tau) == 5 ? 1 : 0;
        }
        rep.exact("example21 five-subsets independent", "Example 21", 6, independent);
        const Example21Check c = example21_check(ex.kernel, tau);
        rep.exact("example21 sigma birank", "Example 21", birank_json({5, 5}), birank_json(c.sigma_birank));
        rep.exact("example21 residual PPT with negative coefficient", "Example 21", true, c.entangled());
    });
}

void lemma14(Report& rep, std::uint64_t seed) {
    guarded(rep, "lemma14", "Lemma 14", [&] {
        const Lemma14Match unit = lemma14_match(1, 1, 1);
        rep.at_most("lemma14 unit weights give (1,1,1)", "Lemma 14",
                    std::max({std::abs(unit.a - 1), std::abs(unit.b - 1), std::abs(unit.d - 1)}), 1e-12);
        Rng rng(seed);
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const double p0 = rng.uniform(0.1, 5.0);
            const double p1 = rng.uniform(0.1, 5.0);
            const double p2 = rng.uniform(0.1, 5.0);
            const Lemma14Match m = lemma14_match(p0, p1, p2);
            const Matrix got = m.v * lemma14_family(m.a, m.b, m.d).matrix * m.v.adjoint();
            const BipartiteState target = lemma14_target(p0, p1, p2);
            worst = std::max(worst, max_abs_diff(got, target.matrix) / target.matrix.max_abs());
        }
        rep.at_most("lemma14 congruence, 50 random weights", "Lemma 14", worst, 1e-9);
    });
}

void prop2(Report& rep, double tau) {
    guarded(rep, "prop2", "Proposition 2", [&] {
        const BipartiteState s = prop2_sigma(1, 1, 1, 1);
        rep.at_most("prop2 sigma is its own partial transpose", "Proposition 2",
                    max_abs_diff(partial_transpose(s).matrix, s.matrix) / s.matrix.max_abs(), 1e-12);
        rep.exact("prop2 sigma rank", "Proposition 2", 4, rank_tol(s.matrix, tau));
        rep.exact("prop2 sigma edge", "Proposition 2", "edge", to_string(is_edge_state(s, kDefaultGrid, tau).verdict));
    });
}

}  // namespace

std::vector<CheckRecord> verify_paper(double tau, std::uint64_t seed) {
    Report rep;
    fixed_examples(rep, tau);
    example26(rep);
    tura(rep, tau);
    lemma27_prop28(rep, tau);
    prop25(rep, tau);
    example29(rep, tau);
    example21(rep, tau, seed);
    lemma14(rep, seed);
    prop2(rep, tau);
    return rep.take();
}

nlohmann::json to_json(const CheckRecord& r) {
    return {{"name", r.name},          {"location", r.location},   {"expected", r.expected},
            {"observed", r.observed},  {"tolerance", r.tolerance}, {"pass", r.pass}};
}

}  // namespace pptlab::cli
