#pragma once

#include <vector>

#include "homexp/config.hpp"
#include "homexp/graph.hpp"
#include "homexp/numeric.hpp"
#include "homexp/weighted.hpp"

namespace homexp {

// Exact chromatic polynomial; coefficient i multiplies y^i.
struct ChromaticPolynomial {
    std::vector<Rational> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    Rational evaluate(const Rational& y) const;
};

// Deletion-contraction with canonical-form memoization (minors up to 8
// nodes) and closed forms for trees, cycles, complete and edgeless graphs.
ChromaticPolynomial chromatic_polynomial(const SimpleGraph& g);

// Number of proper k-colorings using every color at least once, by
// inclusion-exclusion over chromatic evaluations.
BigInt surjective_colorings(const SimpleGraph& g, int k);

// Crapo invariant cr(G): the linear coefficient of the chromatic
// polynomial, equal to the signed sum over connected spanning subgraphs.
BigInt crapo_invariant(const SimpleGraph& g);

// Contraction of edge (u,v): endpoints merge (node weights add) and the
// parallel edge weights toward each remaining node combine by sum (H/e) or
// by sum minus product (H "divided" by e).
template <typename T>
WeightedGraphT<T> contract_sum(const WeightedGraphT<T>& h, int u, int v);
template <typename T>
WeightedGraphT<T> contract_sum_minus_product(const WeightedGraphT<T>& h,
                                             int u, int v);
// H - e: the edge weight between u and v set to zero.
template <typename T>
WeightedGraphT<T> delete_edge(const WeightedGraphT<T>& h, int u, int v);

// cr(H) = sum over connected spanning subgraphs of the support of
// (-1)^{edges} * prod beta; evaluated over off-diagonal nonzero weights.
template <typename T>
T weighted_crapo(const WeightedGraphT<T>& h,
                 const Budget& budget = default_budget());

// tree(H) = sum over spanning trees of the support of prod beta.  Float
// mode uses a reduced weighted-Laplacian determinant; exact mode
// enumerates (capped at 12 support edges).
template <typename T>
T weighted_tree_sum(const WeightedGraphT<T>& h,
                    const Budget& budget = default_budget());

}  // namespace homexp
