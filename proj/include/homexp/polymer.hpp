#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "homexp/config.hpp"
#include "homexp/enumeration.hpp"
#include "homexp/graph.hpp"
#include "homexp/numeric.hpp"
#include "homexp/weighted.hpp"

namespace homexp {

// A logarithmic estimate with a certified error radius; the radius is
// +infinity when no convergence certificate held.
struct CertifiedLog {
    double value = 0.0;
    double error_radius = std::numeric_limits<double>::infinity();
    bool per_node = false;

    bool certified() const { return std::isfinite(error_radius); }
};

// Abstract polymer system over a host graph: polymers are connected induced
// subgraphs (>= 2 nodes), adjacent in the intersection graph exactly when
// their node sets intersect.
template <typename T>
struct PolymerSystemT {
    std::vector<FamilyMember> polymers;  // host-label node/edge lists
    SimpleGraph polymer_graph;           // intersection graph
    std::vector<T> activities;           // one activity per polymer
};

using PolymerSystem = PolymerSystemT<double>;

// Multivariate stable-set polynomial: sum over independent sets S of g of
// prod_{i in S} x_i, by exact enumeration.
template <typename T>
T stab_polynomial(const SimpleGraph& g, const std::vector<T>& x,
                  const Budget& budget = default_budget());

// One multiset-collapsed term of the Mayer expansion of ln stab.
struct MayerTerm {
    std::vector<int> nodes;           // distinct support, ascending
    std::vector<int> multiplicities;  // parallel to nodes, >= 1
    int order = 0;                    // total multiplicity
    BigInt coefficient{0};            // cr of the sequence graph
    double contribution = 0.0;        // coefficient * prod x^a / prod a!
};

// All terms of order <= m_max with connected support (others vanish),
// in deterministic enumeration order.
std::vector<MayerTerm> mayer_terms(const SimpleGraph& g,
                                   const std::vector<double>& x, int m_max,
                                   const Budget& budget = default_budget());

// Partial Mayer sum for ln stab(g, x) up to order m_max, with a tail radius
// from the Dobrushin certificate applied to scaled activities (infinite
// radius when no certificate holds on the search grid).
CertifiedLog mayer_log_stab(const SimpleGraph& g, const std::vector<double>& x,
                            int m_max, const Budget& budget = default_budget());

struct DobrushinCertificate {
    bool holds = false;
    double bound = 0.0;  // bound on |ln stab| when holds is true
};

// Certificate: sum_{j equal or adjacent to i} ln(1+|x_j| e^{b_j}) <= b_i
// for every i; when it holds, |ln stab| <= sum_i ln(1+|x_i| e^{b_i}).
DobrushinCertificate dobrushin_certificate(const SimpleGraph& g,
                                           const std::vector<double>& x,
                                           const std::vector<double>& b);

// The polymer system whose stable-set polynomial equals t(G,H): polymers
// are CInd(G) truncated at max_polymer_nodes, activities z(F, complement
// of H).
template <typename T>
PolymerSystemT<T> polymer_system_from(const SimpleGraph& g,
                                      const WeightedGraphT<T>& h,
                                      int max_polymer_nodes,
                                      const Budget& budget = default_budget());

// cr of the sequence graph on `multiplicities[i]` copies of each support
// node: copies adjacent iff their support nodes are equal or adjacent in g.
// Evaluated by a partition-count recursion (dense sequence graphs defeat
// deletion-contraction).
BigInt sequence_crapo(const SimpleGraph& g, const std::vector<int>& nodes,
                      const std::vector<int>& multiplicities);

}  // namespace homexp
