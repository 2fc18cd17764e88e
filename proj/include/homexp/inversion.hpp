#pragma once

#include <string>
#include <vector>

#include "homexp/config.hpp"
#include "homexp/graph.hpp"
#include "homexp/numeric.hpp"
#include "homexp/weighted.hpp"

namespace homexp {

// All connected isomorphism types with 2..m nodes, ordered by node count,
// then edge count, then canonical key.  The family is closed under
// surjective homomorphic images, which keeps the hom matrix nonsingular.
struct GraphFamily {
    std::vector<SimpleGraph> members;
};

// Exact count matrices over a family: entry (i,j) counts maps from member i
// into member j.  Under the family order inj is upper triangular and surj
// is lower triangular, both with the automorphism counts on the diagonal.
struct HomMatrices {
    std::vector<std::vector<BigInt>> inj;
    std::vector<std::vector<BigInt>> surj;
    std::vector<std::vector<BigInt>> hom;
    std::vector<BigInt> aut;
};

// The assembled right-to-left linear system: targets H_j built from the
// family members, the coefficient matrix u(F_i, H_j), its inverse w, and
// conditioning data.  `family` may extend the requested family by one node
// size (a guard ring): the series coefficients of the (m+1)-node types
// carry a q^-(m+1) leading term that would otherwise alias into the
// requested slots at rate 1/q, so solving with the guard in place and
// reporting only the first `reported` entries restores the q^-(m+2)
// residual scaling.  residual_bound records that per-target remainder
// scale per node of the probed graph.
struct InversionSystem {
    GraphFamily family;
    int reported = 0;
    int q = 0;
    double delta = 1.0;
    bool collapsed = false;
    std::vector<WeightedGraph> targets;
    std::vector<std::vector<double>> u_matrix;
    std::vector<std::vector<double>> w_matrix;
    double condition_number = 0.0;
    double residual_bound = 0.0;
};

// All connected simple graphs with 2..m nodes up to isomorphism, in
// canonical order.  Desk scale: 2 <= m <= 5.
GraphFamily build_family(int m);

// Exact inj/surj/hom/aut matrices of the family, with the triangularity
// and the factorization hom = surj * diag(aut)^-1 * inj checked exactly.
HomMatrices hom_matrices(const GraphFamily& family,
                         const Budget& budget = default_budget());

// Targets H_i on q nodes: complement of (F_i plus q-|F_i| isolated nodes)
// with a loop at every node and unit node weights.  With `weighted` set,
// zero edge weights become 1-delta and the interchangeable added nodes are
// collapsed into one node of weight q-|F_i|, giving an equivalent target on
// |F_i|+1 nodes.
std::vector<WeightedGraph> build_targets(const GraphFamily& family, int q,
                                         bool weighted = false,
                                         double delta = 1.0);

// Coefficients u(F_i, H_j) of ln t(G,H_j) = sum_i inj0(F_i,G) u(F_i,H_j),
// from the Mayer-type series over multisets of connected subgraphs covering
// F_i, truncated at multisets of k_max subgraphs.  k_max = 0 means the
// default (the family size).
std::vector<std::vector<double>> u_coefficients(
    const GraphFamily& family, int q, int k_max = 0, double delta = 1.0,
    const Budget& budget = default_budget());

// Assemble the full system: targets, u matrix, inverse, condition number
// (infinity-norm estimate), and residual scale.  When q allows it and the
// family is a standard one, the solve is padded with the guard ring of
// (m+1)-node types; k_max = 0 picks min(family size, 4).
InversionSystem build_system(const GraphFamily& family, int q, int k_max = 0,
                             bool weighted = false, double delta = 1.0,
                             const Budget& budget = default_budget());

// Recovered estimates of inj0(F_i, G) for the requested family members via
// sum_j w_ji ln t(G, H_j).  The homomorphism values are evaluated on the
// collapsed twin-merged targets, which agree exactly with the q-node ones
// but keep the elimination tables small.
std::vector<double> recover_counts(const SimpleGraph& g,
                                   const InversionSystem& system,
                                   const Budget& budget = default_budget());

}  // namespace homexp
