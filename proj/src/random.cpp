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


#include "pptlab/random.hpp"

#include <cmath>
#include <numbers>

#include "pptlab/errors.hpp"
#include "pptlab/numerics.hpp"

namespace pptlab {

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

std::size_t Rng::index(std::size_t n) {
    if (n == 0) {
        throw ContractViolation("Rng::index: empty range");
    }
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CVector Rng::vector(std::size_t n) {
    CVector v(n);
    for (auto& x : v) {
        x = complex_normal();
    }
    return v;
}

CVector Rng::unit_vector(std::size_t n) { return normalized(vector(n)); }

Matrix Rng::ginibre(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = complex_normal();
        }
    }
    return m;
}

Matrix Rng::hermitian(std::size_t n) {
    const Matrix g = ginibre(n, n);
    Matrix h = g + g.adjoint();
    h *= 0.5;
    return h.hermitian_part();
}

Matrix Rng::unitary(std::size_t n) {
    // Modified Gram-Schmidt on Ginibre columns; the phase of each column is
    // fixed by the construction, which gives the Haar measure.
    Matrix g = ginibre(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        CVector v = g.col(c);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                const CVector q = g.col(p);
                axpy(-dot(q, v), q, v);
            }
        }
        g.set_col(c, normalized(v));
    }
    return g;
}

Matrix Rng::invertible(std::size_t n, double cond) {
    if (cond < 1.0) {
        throw ContractViolation("Rng::invertible: condition number below 1");
    }
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = n == 1 ? 1.0 : std::pow(cond, static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return unitary(n) * Matrix::diagonal(s) * unitary(n);
}

std::vector<CVector> fibonacci_qubits(std::size_t count) {
    std::vector<CVector> out;
    out.reserve(count);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
        const double zc = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
        const double theta = std::acos(zc);
        const double phi = golden * static_cast<double>(i);
        out.push_back({std::polar(std::cos(theta / 2.0), phi), cplx(std::sin(theta / 2.0), 0.0)});
    }
    return out;
}

}  // namespace pptlab
