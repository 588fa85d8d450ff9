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


// Explicit state families with the certificates they are expected to pass.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pptlab/bipartite.hpp"

namespace pptlab {

struct ExpectedCertificate {
    std::optional<Birank> birank;
    bool ppt = true;
    std::optional<bool> entangled;
    std::optional<std::size_t> length;
    std::optional<std::size_t> negative_count;
};

struct Construction {
    std::string family;
    BipartiteState state;
    ExpectedCertificate cert;
    /// Product vectors with weights absorbed: state = sum |v><v| when nonempty.
    std::vector<ProductVector> decomposition;
    /// Orthogonal pieces of the partial transpose, where the family has them.
    std::vector<Matrix> parts;
    nlohmann::json params = nlohmann::json::object();
};

/// Primitive cube root of unity (-1 + i sqrt 3) / 2.
cplx zeta3();

std::vector<std::string> fixed_example_ids();
/// Throws ContractViolation for an unknown id.
Construction fixed_example(std::string_view id);

/// C^dagger C for the 4 x 9 matrix C = [C0 C1 C2] with parameters a, b, c, d.
/// c = 0 is admitted as the boundary family.
BipartiteState prop2_sigma(double a, double b, double c, double d);

struct Lemma14Match {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    Matrix va;
    Matrix vb;
    Matrix v;  // b (1 + b^2)^{-3/2} va (x) vb
};

BipartiteState lemma14_family(double a, double b, double d);
Lemma14Match lemma14_match(double p0, double p1, double p2);
/// sum_i p_i |ii><ii| + |e, e><e, e| on 3 (x) 3 with e = |0> + |1> + |2>.
BipartiteState lemma14_target(double p0, double p1, double p2);
/// Four weighted product vectors summing to lemma14_family(a, b, d).
std::vector<ProductVector> lemma14_decomposition(double a, double b, double d);

struct Example21 {
    BipartiteState kernel_state;        // prop2_sigma(1, 1, 1, 1)
    std::vector<ProductVector> kernel;  // unit product vectors spanning ker
    BipartiteState sigma;               // sum of their projectors
};
/// Throws NumericalDegeneracy unless exactly six kernel product vectors are found.
Example21 example21_sigma(std::uint64_t seed = 7);

BipartiteState tura_state(std::size_t n);
ProductVector tura_phi(std::size_t n, cplx a);
/// (I (x) V) phi(a) with V the anti-diagonal flip.
ProductVector tura_psi(std::size_t n, cplx a);

Construction lemma27_state(std::size_t n, std::size_t k, double epsilon = 1e-2, std::vector<double> a_list = {});
Construction prop28_state(std::size_t n, std::size_t k, std::size_t p, double epsilon = 1e-2,
                          double epsilon_prime = 1e-2);
Construction prop25_separable(std::size_t n, std::size_t j, std::size_t k);

/// Default coefficients: c_i = 1/2 up to k, then rising linearly, c_{N-1} = 1.
std::vector<double> example29_default_c(std::size_t n, std::size_t k);
Construction example29_state(std::size_t n, std::size_t k, std::vector<double> c_list = {});
/// (|00> + |11>)(<00| + <11|) + |0><0| (x) I_N.
Construction example29_single_negative(std::size_t n);

}  // namespace pptlab
