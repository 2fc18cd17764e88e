#pragma once

#include <cstdint>
#include <vector>

#include "homexp/config.hpp"
#include "homexp/graph.hpp"
#include "homexp/numeric.hpp"
#include "homexp/weighted.hpp"

namespace homexp {

// Exact counts of the homomorphism variants from one simple graph into
// another, plus the automorphism-normalized densities.
struct HomCounts {
    BigInt hom{0};
    BigInt inj{0};   // injective homomorphisms (embeddings)
    BigInt ind{0};   // embeddings as induced subgraphs
    BigInt surj{0};  // homomorphisms surjective on nodes and edges
    BigInt aut{0};   // automorphisms of the pattern
    Rational inj0{0};  // inj / aut
    Rational ind0{0};  // ind / aut
};

// One map V(G) -> V(H) with its Gibbs weight W(phi) = prod alpha * prod beta.
struct GibbsWeight {
    std::vector<int> map;
    double weight = 0.0;
};

// Full Gibbs distribution over maps; `entries[i].weight` holds the
// normalized probability and `partition` the unnormalized sum hom(G,H).
struct GibbsDistribution {
    std::vector<GibbsWeight> entries;
    double partition = 0.0;
};

// Exact hom(F,G) for simple graphs.  Dispatches internally between brute
// enumeration, variable-elimination DP, and a complete-target evaluation of
// the chromatic polynomial; throws resource_error when no exact strategy
// fits the budget.
BigInt hom_count(const SimpleGraph& pattern, const SimpleGraph& target,
                 const Budget& budget = default_budget());

// Weighted partition function hom(F,H) = sum_phi prod alpha_{phi(u)} prod
// beta_{phi(u)phi(v)}.  Same dispatch strategy (brute force, elimination DP,
// random-cluster form for two-level targets).
template <typename T>
T hom_count(const SimpleGraph& pattern, const WeightedGraphT<T>& target,
            const Budget& budget = default_budget());

// All five counts plus inj0/ind0 by pruned brute force.
HomCounts inj_ind_surj_aut(const SimpleGraph& pattern,
                           const SimpleGraph& target,
                           const Budget& budget = default_budget());

// aut(G) = inj(G,G).
BigInt automorphism_count(const SimpleGraph& graph,
                          const Budget& budget = default_budget());

// Homomorphism density t(F,H) = hom(F,H) / alpha_H^{|F|}.
template <typename T>
T density(const SimpleGraph& pattern, const WeightedGraphT<T>& target,
          const Budget& budget = default_budget());

// z(G,H) = sum over connected spanning subgraphs F of G of
// (-1)^{|E(F)|} t(F,H).  G must be connected (or a single node).
template <typename T>
T z_value(const SimpleGraph& graph, const WeightedGraphT<T>& target,
          const Budget& budget = default_budget());

// Verifies the inverse relation t(G,H) = sum_{F in CSpan(G)} (-1)^{|E(F)|}
// z(F,H); exact equality in rational mode, 1e-9 relative in float mode.
template <typename T>
bool z_inversion_check(const SimpleGraph& graph,
                       const WeightedGraphT<T>& target,
                       const Budget& budget = default_budget());

// Random map phi with coordinates drawn i.i.d. from the normalized node
// weights of `target`; returns phi together with its weight W(phi).
GibbsWeight sample_random_map(const SimpleGraph& graph,
                              const WeightedGraph& target, std::uint64_t seed);

// The weighted graph G^phi: nodes of G with unit weights, each edge uv of G
// carrying weight beta_{phi(u)phi(v)}.
WeightedGraph pushforward_weights(const SimpleGraph& graph,
                                  const WeightedGraph& target,
                                  const std::vector<int>& map);

// Materializes Pr_G(phi) proportional to W(phi) over all maps.  Throws
// precondition_error when hom(G,H) = 0 (degenerate distribution) and
// resource_error when |V(H)|^{|G|} exceeds the enumeration cap.
GibbsDistribution gibbs_distribution(const SimpleGraph& graph,
                                     const WeightedGraph& target,
                                     const Budget& budget = default_budget());

namespace detail {

// Serial reference kernels and their parallel counterparts.  The public
// entry points use the parallel kernels; tests and the benchmark tool pin
// the two against each other.
BigInt hom_brute_serial(const SimpleGraph& pattern, const SimpleGraph& target);
BigInt hom_brute_parallel(const SimpleGraph& pattern,
                          const SimpleGraph& target);

template <typename T>
T hom_brute_serial(const SimpleGraph& pattern, const WeightedGraphT<T>& target);

template <typename T>
T hom_brute_parallel(const SimpleGraph& pattern,
                     const WeightedGraphT<T>& target);

// True when base^exponent <= cap without overflow.
bool power_fits(std::uint64_t base, int exponent, std::uint64_t cap);

}  // namespace detail

}  // namespace homexp
