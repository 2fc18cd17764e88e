#pragma once

#include <cstdint>
#include <vector>

#include "homexp/config.hpp"
#include "homexp/graph.hpp"
#include "homexp/localstats.hpp"
#include "homexp/polymer.hpp"
#include "homexp/weighted.hpp"

namespace homexp {

// Configuration of the local cavity estimator.
struct CavityConfig {
    int radius = 2;
    int ordering_samples = 200;
    std::uint64_t seed = 0;
};

// Monte-Carlo summary for one ball isomorphism class.
struct BallContribution {
    RootedBall ball;
    double frequency = 0.0;       // mu(G, ball class)
    double x_u = 0.0;             // mean of ln Psi over sampled orderings
    int sample_count = 0;
    double standard_error = 0.0;  // of the mean
};

struct LocalEstimate {
    CertifiedLog log;      // per-node value and total error radius
    double kappa = 0.0;    // locality constant 2 D c(complement)
    std::vector<BallContribution> contributions;
};

// Psi_K(v): the expectation, under the Gibbs distribution of K - v, of
// sum_i alpha~_i prod_{w adjacent to v} beta_{i, phi(w)}; evaluated exactly
// as hom(K,H) / (hom(K-v,H) alpha_H).
double psi(const SimpleGraph& k, int v, const WeightedGraph& h,
           const Budget& budget = default_budget());

// Telescoped exact logarithm: sum over the ordering of ln Psi of the suffix
// graphs; equals ln t(G,H) for every ordering.
double sequential_ln_t(const SimpleGraph& g, const WeightedGraph& h,
                       const std::vector<int>& ordering,
                       const Budget& budget = default_budget());

// Local estimator of ln t(G,H)/|G|: groups nodes by r-ball class, averages
// ln Psi over random orderings restricted to each ball, and certifies the
// radius 2 D kappa^r plus three Monte-Carlo standard errors.
LocalEstimate local_estimate_details(const SimpleGraph& g,
                                     const WeightedGraph& h,
                                     const CavityConfig& config,
                                     const Budget& budget = default_budget());

CertifiedLog local_estimate_ln_t(const SimpleGraph& g, const WeightedGraph& h,
                                 const CavityConfig& config,
                                 const Budget& budget = default_budget());

// |Psi_K(v) - Psi_{K'}(v')| for nodes with isomorphic r-balls, for
// empirical comparison against the D kappa^r locality bound.
double psi_locality_gap(const SimpleGraph& k, int v, const SimpleGraph& k2,
                        int v2, const WeightedGraph& h, int r,
                        const Budget& budget = default_budget());

// The hard-core model at fugacity lambda: two nodes with alpha
// (1/(1+lambda), lambda/(1+lambda)) and the occupied-occupied edge weight 0.
WeightedGraph hardcore_weighted_graph(double lambda);

}  // namespace homexp
