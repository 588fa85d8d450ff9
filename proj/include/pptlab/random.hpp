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


// Seeded generators for test states, ILOs and sampling grids.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pptlab/matrix.hpp"

namespace pptlab {

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0);
    double normal();
    std::size_t index(std::size_t n);
    cplx complex_normal();

    CVector vector(std::size_t n);
    CVector unit_vector(std::size_t n);
    /// Ginibre matrix with i.i.d. complex normal entries.
    Matrix ginibre(std::size_t rows, std::size_t cols);
    Matrix hermitian(std::size_t n);
    /// Haar-random unitary (QR of a Ginibre matrix with phase fix).
    Matrix unitary(std::size_t n);
    /// Invertible matrix with singular values spread in [1, cond].
    Matrix invertible(std::size_t n, double cond);

    std::mt19937_64& engine() { return engine_; }

   private:
    std::mt19937_64 engine_;
};

/// Deterministic Fibonacci lattice on the Bloch sphere, returned as unit
/// qubit vectors (cos(theta/2) e^{i phi}, sin(theta/2)).
std::vector<CVector> fibonacci_qubits(std::size_t count);

}  // namespace pptlab
