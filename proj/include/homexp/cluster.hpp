#pragma once

#include <vector>

#include "homexp/config.hpp"
#include "homexp/graph.hpp"
#include "homexp/polymer.hpp"
#include "homexp/weighted.hpp"

namespace homexp {

// Constants of the truncated cluster-expansion estimator.
struct ExpansionConstants {
    double b = 0.4;        // free parameter of the convergence condition
    double K = 0.0;        // (b + e^b) / ln(1 + b e^{-b})
    double epsilon = 0.0;  // -ln(D K c_bar); +infinity when c_bar = 0
    double c_bar = 0.0;    // interaction norm of the complement target
    bool valid = false;    // c_bar < 1 / (K D)
};

// Computes the constants for max degree D and target H.
ExpansionConstants expansion_constants(int max_degree, const WeightedGraph& h,
                                       double b = 0.4);

// Partial sum of the per-type series
//   v(F,H) = sum_m (1/m!) sum over polymer sequences from CInd(F) covering
//   V(F) of cr(intersection graph) prod z(F_i, complement of H),
// truncated at total order m_max.  Returns 0 for disconnected F.
double cluster_v(const SimpleGraph& f, const WeightedGraph& h, int m_max,
                 const Budget& budget = default_budget());

// Truncated estimator of ln t(G,H) / |G|: sums ind0(F,G) v(F,H) over
// isomorphism types F of connected induced subgraphs with |F| <= k, with
// v evaluated in closed form, and certifies the tail radius b e^{-eps(k+1)}.
// Refuses (precondition error) when the convergence condition fails.
CertifiedLog truncated_ln_t(const SimpleGraph& g, const WeightedGraph& h,
                            int k, double b = 0.4,
                            const Budget& budget = default_budget());

struct LnTConvergenceRow {
    int node_count = 0;
    double value = 0.0;         // per-node truncated estimate
    double error_radius = 0.0;  // certified tail radius
    double delta = 0.0;         // value minus the previous row's value
};

// Runs the truncated estimator over a graph sequence and tabulates
// successive differences (Cauchy behavior for locally convergent inputs).
std::vector<LnTConvergenceRow> ln_t_convergence_table(
    const std::vector<SimpleGraph>& graphs, const WeightedGraph& h, int k,
    double b = 0.4, const Budget& budget = default_budget());

}  // namespace homexp
