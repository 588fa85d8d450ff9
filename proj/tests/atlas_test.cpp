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

#include "gtest/gtest.h"
#include "pptlab/errors.hpp"
#include "pptlab/pencil.hpp"
#include "pptlab/random.hpp"
#include "oracles.hpp"

using namespace pptlab;
using namespace pptlab_test;

namespace {

Matrix sum_of_terms(const std::vector<ProductVector>& terms, std::size_t dim) {
    Matrix m(dim, dim);
    for (const auto& pv : terms) {
        add_projector(m, pv.tensor());
    }
    return m;
}

std::vector<CVector> columns(const Matrix& m) {
    std::vector<CVector> out;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        out.push_back(m.col(j));
    }
    return out;
}

void expect_certificate(const Construction& c) {
    SCOPED_TRACE(c.family + " " + c.params.dump());
    if (c.cert.birank) {
        EXPECT_EQ(birank(c.state), *c.cert.birank);
    }
    const Classification cls = classify(c.state);
    EXPECT_EQ(cls.verdict == Verdict::PPT, c.cert.ppt);
    if (c.cert.negative_count) {
        EXPECT_EQ(cls.negative_count, *c.cert.negative_count);
    }
    if (!c.decomposition.empty()) {
        const double scale = std::abs(c.state.trace());
        EXPECT_LE(max_abs_diff(sum_of_terms(c.decomposition, c.state.dim()), c.state.matrix), 1e-12 * scale);
    }
    if (c.cert.length && !c.decomposition.empty()) {
        EXPECT_EQ(c.decomposition.size(), *c.cert.length);
    }
}

}  // namespace

TEST(atlas, zeta3) {
    const cplx z = zeta3();
    EXPECT_NEAR(std::abs(z * z * z - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(1.0 + z + z * z), 0.0, 1e-15);
}

TEST(atlas, fixed_examples_pass_certificates) {
    const auto ids = fixed_example_ids();
    EXPECT_EQ(ids.size(), 15u);
    for (const auto& id : ids) {
        const Construction c = fixed_example(id);
        EXPECT_EQ(c.family, id);
        ASSERT_TRUE(c.cert.birank.has_value()) << id;
        expect_certificate(c);
    }
    EXPECT_THROW(fixed_example("table3-(1,1)"), ContractViolation);
}

TEST(atlas, printed_biranks) {
    const std::vector<std::pair<std::string, Birank>> rows{
        {"table1-(2,2)", {2, 2}}, {"table1-(3,3)", {3, 3}}, {"table1-(3,4)", {3, 4}}, {"table1-(4,4)", {4, 4}},
        {"table2-(3,3)", {3, 3}}, {"table2-(4,4)", {4, 4}}, {"table2-(4,5)", {4, 5}}, {"table2-(4,6)", {4, 6}},
        {"table2-(5,5)", {5, 5}}, {"table2-(5,6)", {5, 6}}, {"table2-(6,6)", {6, 6}}, {"example13", {4, 5}},
        {"example13-ext", {5, 6}}, {"example20", {3, 4}}, {"example26", {4, 6}}};
    for (const auto& [id, br] : rows) {
        EXPECT_EQ(birank(fixed_example(id).state), br) << id;
    }
}

TEST(atlas, table2_46_is_the_printed_state) {
    const Construction c = fixed_example("table2-(4,6)");
    EXPECT_FALSE(c.params.contains("fallback"));
    EXPECT_EQ(birank(c.state), (Birank{4, 6}));
}

TEST(atlas, example26_char_poly) {
    const Construction c = fixed_example("example26");
    const CharPoly cp = char_poly(partial_transpose(c.state).matrix);
    const double expected[] = {1, -19, 133, -413, 520, -148, 4};
    ASSERT_EQ(cp.coefficients.size(), 7u);
    for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_NEAR(cp.coefficients[i].real(), expected[i], 1e-6);
        EXPECT_NEAR(cp.coefficients[i].imag(), 0.0, 1e-6);
    }
    const Spectrum sp = eig_hermitian(partial_transpose(c.state).matrix);
    EXPECT_GT(sp.values.front(), 0.0);
}

TEST(atlas, tura_partial_transpose) {
    for (std::size_t n = 3; n <= 6; ++n) {
        const BipartiteState rho = tura_state(n);
        EXPECT_LE(max_abs_diff(partial_transpose(rho).matrix, tura_gamma_oracle(n)), 1e-12) << n;
        EXPECT_EQ(birank(rho), (Birank{n + 1, n + 1}));
        EXPECT_EQ(classify(rho).verdict, Verdict::PPT);
    }
    EXPECT_THROW(tura_state(2), ContractViolation);
}

TEST(atlas, tura_gamma_is_flipped_state) {
    for (std::size_t n = 3; n <= 6; ++n) {
        Matrix flip(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            flip(i, n - 1 - i) = 1.0;
        }
        const Matrix v = kron(Matrix::identity(2), flip);
        const BipartiteState rho = tura_state(n);
        EXPECT_LE(max_abs_diff(partial_transpose(rho).matrix, v * rho.matrix * v.adjoint()), 1e-12);
    }
}

TEST(atlas, tura_phi_in_range) {
    Rng rng(4);
    for (std::size_t n = 3; n <= 6; ++n) {
        const BipartiteState rho = tura_state(n);
        const Matrix range = range_basis(rho.matrix);
        std::vector<CVector> real_samples;
        for (double a : {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0}) {
            const CVector x = tura_phi(n, a).tensor();
            EXPECT_LE(projection_residual(range, x), 1e-9);
            real_samples.push_back(x);
        }
        EXPECT_EQ(rank_tol(Matrix::from_columns(real_samples, 2 * n)), std::min<std::size_t>(6, n + 1));
        for (int t = 0; t < 10; ++t) {
            EXPECT_LE(projection_residual(range, tura_phi(n, 0.8 * rng.complex_normal()).tensor()), 1e-9);
        }
    }
}

TEST(atlas, tura_psi_is_real_for_real_nodes) {
    for (std::size_t n = 3; n <= 6; ++n) {
        for (double a : {-1.5, 0.5, 2.0}) {
            const CVector x = tura_psi(n, a).tensor();
            const BipartiteState p = pure_state(2, n, x);
            EXPECT_LE(max_abs_diff(partial_transpose(p).matrix, p.matrix), 1e-14);
        }
    }
}

TEST(atlas, lemma27_biranks) {
    for (std::size_t n = 3; n <= 6; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            const Construction c = lemma27_state(n, k);
            EXPECT_EQ(birank(c.state), (Birank{n + 1, n + 1 + k})) << n << " " << k;
            EXPECT_EQ(classify(c.state).verdict, Verdict::PPT);
            expect_certificate(c);
        }
    }
}

TEST(atlas, lemma27_examples) {
    EXPECT_EQ(birank(lemma27_state(3, 1).state), (Birank{4, 5}));
    EXPECT_EQ(birank(lemma27_state(4, 3).state), (Birank{5, 8}));
    const Construction c = lemma27_state(4, 2, 1e-2, {1.0, 2.0});
    EXPECT_EQ(c.params["a"], (std::vector<double>{1.0, 2.0}));
    EXPECT_THROW(lemma27_state(4, 2, 1e-2, {1.0}), ContractViolation);
    EXPECT_THROW(lemma27_state(4, 4), ContractViolation);
}

TEST(atlas, prop28_biranks) {
    for (std::size_t n = 3; n <= 6; ++n) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t p = 0; p < n; ++p) {
                const Construction c = prop28_state(n, k, p);
                EXPECT_EQ(birank(c.state), (Birank{n + 1 + p, n + 1 + k})) << n << " " << k << " " << p;
                EXPECT_EQ(classify(c.state).verdict, Verdict::PPT);
            }
        }
    }
    EXPECT_EQ(birank(prop28_state(4, 0, 2).state), (Birank{7, 5}));
    EXPECT_EQ(birank(prop28_state(3, 2, 2).state), (Birank{6, 6}));
}

TEST(atlas, entangled_rank_exceeds_local_ranks) {
    std::vector<BipartiteState> states{tura_state(4), tura_state(5), prop2_sigma(1, 1, 1, 1),
                                       lemma27_state(4, 2).state};
    for (const auto& s : states) {
        const auto [ra, rb] = local_ranks(s);
        EXPECT_GT(rank_tol(s.matrix), std::max(ra, rb));
    }
}

TEST(atlas, prop25_biranks) {
    for (std::size_t n = 3; n <= 6; ++n) {
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t k = j; k <= n; ++k) {
                const Construction c = prop25_separable(n, j, k);
                EXPECT_EQ(birank(c.state), (Birank{n + j, n + k})) << n << " " << j << " " << k;
                expect_certificate(c);
            }
        }
    }
}

TEST(atlas, prop25_identity_case) {
    const Construction c = prop25_separable(4, 4, 4);
    EXPECT_LE(max_abs_diff(c.state.matrix, Matrix::identity(8)), 1e-15);
}

TEST(atlas, example29_negative_counts) {
    for (std::size_t n = 4; n <= 6; ++n) {
        for (std::size_t k = 1; k + 1 < n; ++k) {
            const Construction c = example29_state(n, k);
            EXPECT_EQ(classify(c.state).negative_count, n - k) << n << " " << k;
            const Matrix gamma = partial_transpose(c.state).matrix;
            Matrix total(2 * n, 2 * n);
            double biggest = 0.0;
            for (const auto& m : c.parts) {
                total += m;
                biggest = std::max(biggest, spectral_norm(m));
            }
            EXPECT_LE(max_abs_diff(total, gamma), 1e-14);
            double worst = 0.0;
            for (std::size_t i = 0; i < c.parts.size(); ++i) {
                for (std::size_t j = 0; j < c.parts.size(); ++j) {
                    if (i != j) {
                        worst = std::max(worst, spectral_norm(c.parts[i] * c.parts[j]));
                    }
                }
            }
            EXPECT_LE(worst, 1e-12 * biggest * biggest);
        }
    }
}

TEST(atlas, example29_printed_case) {
    const Construction c = example29_state(4, 1, {0.5, 0.8, 1.0});
    EXPECT_EQ(classify(c.state).negative_count, 3u);
    EXPECT_EQ(classify(example29_single_negative(4).state).negative_count, 1u);
    EXPECT_THROW(example29_state(4, 1, {0.5, 0.4, 1.0}), ContractViolation);
    EXPECT_THROW(example29_state(4, 2, {0.5, 0.6, 1.0}), ContractViolation);
    EXPECT_THROW(example29_state(4, 1, {0.5, 0.8, 0.9}), ContractViolation);
}

TEST(atlas, prop2_sigma_fixed_point) {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        const double a = rng.uniform(0.2, 3.0);
        const double b = rng.uniform(0.2, 3.0);
        const double c = t == 0 ? 0.0 : rng.uniform(0.2, 3.0);
        const double d = rng.uniform(0.2, 3.0);
        const BipartiteState s = prop2_sigma(a, b, c, d);
        EXPECT_LE(max_abs_diff(partial_transpose(s).matrix, s.matrix), 1e-12 * s.matrix.max_abs());
        EXPECT_EQ(rank_tol(s.matrix), 4u);
    }
    EXPECT_THROW(prop2_sigma(0, 1, 1, 1), ContractViolation);
    EXPECT_THROW(prop2_sigma(1, 1, -1, 1), ContractViolation);
}

TEST(atlas, prop2_sigma_range_has_no_product_vector) {
    Rng rng(12);
    for (int t = 0; t < 5; ++t) {
        const BipartiteState s =
            t == 0 ? prop2_sigma(1, 1, 1, 1)
                   : prop2_sigma(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
                                 rng.uniform(0.5, 2.0));
        const Subspace3x3Result r = product_vectors_in_subspace_3x3(columns(range_basis(s.matrix)));
        EXPECT_FALSE(r.non_generic);
        EXPECT_TRUE(r.vectors.empty());
    }
}

TEST(atlas, example21_sigma) {
    const Example21 ex = example21_sigma();
    ASSERT_EQ(ex.kernel.size(), 6u);
    EXPECT_EQ(birank(ex.sigma), (Birank{5, 5}));
    const Matrix ker = kernel_basis(ex.kernel_state.matrix);
    std::vector<CVector> projectors;
    for (const auto& pv : ex.kernel) {
        EXPECT_LE(projection_residual(ker, pv.tensor()), 1e-8);
        const Matrix p = Matrix::outer(pv.tensor());
        CVector flat;
        for (std::size_t r = 0; r < 9; ++r) {
            for (std::size_t c = 0; c < 9; ++c) {
                flat.push_back(p(r, c));
            }
        }
        projectors.push_back(flat);
    }
    EXPECT_EQ(rank_tol(Matrix::from_columns(projectors, 81)), 6u);
}

TEST(atlas, lemma14_unit_weights) {
    const Lemma14Match m = lemma14_match(1, 1, 1);
    EXPECT_NEAR(m.a, 1.0, 1e-15);
    EXPECT_NEAR(m.b, 1.0, 1e-15);
    EXPECT_NEAR(m.d, 1.0, 1e-15);
    EXPECT_THROW(lemma14_match(1, 0, 1), ContractViolation);
}

TEST(atlas, lemma14_congruence) {
    Rng rng(14);
    for (int t = 0; t < 50; ++t) {
        const double p0 = rng.uniform(0.1, 5.0);
        const double p1 = rng.uniform(0.1, 5.0);
        const double p2 = rng.uniform(0.1, 5.0);
        const Lemma14Match m = lemma14_match(p0, p1, p2);
        const BipartiteState rho = lemma14_family(m.a, m.b, m.d);
        const BipartiteState sigma = lemma14_target(p0, p1, p2);
        const Matrix got = m.v * rho.matrix * m.v.adjoint();
        EXPECT_LE(max_abs_diff(got, sigma.matrix), 1e-9 * sigma.matrix.max_abs()) << p0 << " " << p1 << " " << p2;
        const auto terms = lemma14_decomposition(m.a, m.b, m.d);
        ASSERT_EQ(terms.size(), 4u);
        EXPECT_LE(max_abs_diff(sum_of_terms(terms, 9), rho.matrix), 1e-12 * rho.matrix.max_abs());
    }
}
