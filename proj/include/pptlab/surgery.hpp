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


// Subtracting pure product states from PPT states: Lemma-type thresholds,
// birank-drop prediction, range product-vector search in 2 (x) N, edge
// testing, balanced vectors and the length recursion for 2 (x) 3.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pptlab/bipartite.hpp"

namespace pptlab {

/// Projection residual below which a vector counts as lying in a range.
inline constexpr double kMembershipCut = 1e-8;
/// Relative gap below which two thresholds are treated as equal.
inline constexpr double kThresholdTie = 1e-7;
inline constexpr std::size_t kDefaultGrid = 4096;

struct SubtractionAnalysis {
    double lambda0 = std::numeric_limits<double>::infinity();
    double lambda1 = std::numeric_limits<double>::infinity();
    bool in_range_rho = false;
    bool in_range_gamma = false;
    /// <e,f| rho^+ |e,f> - <e*,f| (rho^Gamma)^+ |e*,f>, i.e. 1/lambda0 - 1/lambda1.
    double g = 0.0;

    double min_lambda() const { return lambda0 < lambda1 ? lambda0 : lambda1; }
    bool tied() const;
};

/// Pseudo-inverses of rho and rho^Gamma plus range bases, reusable across
/// many product vectors.
class ThresholdCalculator {
   public:
    /// Throws ContractViolation unless rho is PPT within tau.
    explicit ThresholdCalculator(const BipartiteState& rho, double tau = kDefaultTau);

    SubtractionAnalysis analyze(const ProductVector& pv) const;
    double g(const ProductVector& pv) const;

    const BipartiteState& state() const { return rho_; }

   private:
    BipartiteState rho_;
    Matrix rho_pinv_;
    Matrix gamma_pinv_;
    Matrix rho_range_;
    Matrix gamma_range_;
};

SubtractionAnalysis subtraction_analysis(const BipartiteState& rho, const ProductVector& pv,
                                         double tau = kDefaultTau);

struct SubtractionResult {
    BipartiteState state;
    Birank before;
    Birank predicted;
    Birank observed;
    SubtractionAnalysis analysis;

    bool confirmed() const { return predicted == observed; }
};

/// rho - lambda |e,f><e,f| with e, f as given (not renormalized). Throws
/// DomainError naming the violated side when lambda exceeds a threshold, and
/// ContractViolation when the vector is outside either range.
SubtractionResult subtract(const BipartiteState& rho, const ProductVector& pv, double lambda,
                           double tau = kDefaultTau);

/// Sum of g over the terms; equals r - s for any decomposition of rho.
double g_sum(const BipartiteState& rho, std::span<const ProductVector> terms, double tau = kDefaultTau);

struct RangeSearch {
    std::vector<ProductVector> vectors;  // unit factors, deduplicated up to scalar
    double min_residual = 0.0;           // best joint membership residual after refinement
    std::size_t grid = 0;
    bool everywhere = false;             // a solution exists over every sampled |a>
};

/// Product vectors |e,f> with |e,f> in R(rho) and |e*,f> in R(rho^Gamma),
/// for rho on C^2 (x) C^N.
RangeSearch range_product_search(const BipartiteState& rho, std::size_t grid = kDefaultGrid,
                                 double tau = kDefaultTau);
std::vector<ProductVector> range_product_vectors_2xN(const BipartiteState& rho, std::size_t grid = kDefaultGrid,
                                                     double tau = kDefaultTau);

enum class EdgeKind { Edge, NotEdge, Inconclusive };

struct EdgeVerdict {
    EdgeKind verdict = EdgeKind::Inconclusive;
    std::optional<ProductVector> witness;
    std::size_t grid = 0;
    double residual = 0.0;
    std::string note;
};

const char* to_string(EdgeKind k);

/// 2 (x) N states go through the range search; 3 (x) 3 states of rank 4 or
/// 5 through the exact subspace finder. Other shapes are inconclusive.
EdgeVerdict is_edge_state(const BipartiteState& rho, std::size_t grid = kDefaultGrid, double tau = kDefaultTau);

/// Product vector in both ranges with g = 0 to working precision, reached by
/// bisecting g along a continuous path between candidates of opposite sign.
/// Candidates default to a range sample when empty.
ProductVector find_balanced_vector(const BipartiteState& rho, std::span<const ProductVector> candidates = {},
                                   double tau = kDefaultTau);

struct LengthResult {
    std::size_t length = 0;
    std::vector<ProductVector> decomposition;  // weights absorbed
    std::vector<Birank> chain;                 // biranks visited, starting with rho's
};

/// Length of a PPT (hence separable) state on 2 (x) 2 or 2 (x) 3, with a
/// decomposition of exactly that many terms. The optional decomposition only
/// seeds the first balanced-vector search.
LengthResult length_2x3(const BipartiteState& rho, std::span<const ProductVector> decomposition = {},
                        double tau = kDefaultTau);

struct Theorem23Result {
    std::vector<ProductVector> split;  // B-direct pure summands, weights absorbed
    BipartiteState core;               // what remains after the splits
    EdgeVerdict core_verdict;
    bool entangled = false;
    /// Filled when the core is not edge: its product terms, weights absorbed.
    std::vector<ProductVector> core_terms;

    std::size_t term_count() const { return split.size() + core_terms.size(); }
};

/// Splits a 2 (x) N PPT state of birank (N+1, N+1) into B-direct pure
/// product summands and a core that is either edge or decomposed further.
Theorem23Result theorem23_decompose(const BipartiteState& rho, std::size_t grid = kDefaultGrid,
                                    double tau = kDefaultTau);

struct PeelResult {
    BipartiteState sigma;
    ProductVector removed;
    std::vector<ProductVector> remaining;
};

/// Removes one term of a rank-matched decomposition so that the rank drops by
/// one. Throws ContractViolation when the term count differs from the rank,
/// NumericalDegeneracy when no term works.
PeelResult lemma22_peel(const BipartiteState& rho, std::span<const ProductVector> decomposition,
                        double tau = kDefaultTau);

struct Example21Check {
    double c = 0.0;           // threshold weight of the first kernel vector
    double c1 = 0.0;          // its coefficient in the residual
    double fit_residual = 0.0;
    Birank sigma_birank;
    Birank residual_birank;
    bool residual_ppt = false;
    bool entangled() const { return residual_ppt && c1 < 0.0; }
};

/// Subtracts c |psi_1><psi_1| from sigma = sum |psi_i><psi_i| at the threshold
/// and expands the residual in the six projectors.
Example21Check example21_check(std::span<const ProductVector> kernel, double tau = kDefaultTau);

}  // namespace pptlab
