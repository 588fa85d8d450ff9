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


#pragma once

#include <vector>

#include "pptlab/bipartite.hpp"
#include "pptlab/random.hpp"

namespace pptlab_test {

using namespace pptlab;

inline ProductVector random_product(Rng& rng, std::size_t m, std::size_t n) {
    return {rng.vector(m), rng.vector(n)};
}

struct Separable {
    BipartiteState state;
    std::vector<ProductVector> terms;
};

inline Separable random_separable(Rng& rng, std::size_t m, std::size_t n, std::size_t count) {
    Separable out;
    for (std::size_t i = 0; i < count; ++i) {
        out.terms.push_back(random_product(rng, m, n));
    }
    out.state = mixture(out.terms);
    return out;
}

/// Random full-rank density matrix (Wishart) of the given shape.
inline BipartiteState random_state(Rng& rng, std::size_t m, std::size_t n, std::size_t rank) {
    const Matrix g = rng.ginibre(m * n, rank);
    return BipartiteState(m, n, (g * g.adjoint()).hermitian_part());
}

/// The product-basis projector |i, j><i, j|.
inline ProductVector basis_product(std::size_t m, std::size_t n, std::size_t i, std::size_t j) {
    return {basis_vector(m, i), basis_vector(n, j)};
}

}  // namespace pptlab_test
