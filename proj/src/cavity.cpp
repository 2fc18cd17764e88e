#include "homexp/cavity.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <string>

#include "homexp/errors.hpp"
#include "homexp/homcount.hpp"

namespace homexp {

namespace {

void require_beta_in_unit_interval(const WeightedGraph& h) {
    for (int i = 0; i < h.node_count(); ++i)
        for (int j = i; j < h.node_count(); ++j)
            if (h.beta(i, j) < 0.0 || h.beta(i, j) > 1.0)
                throw precondition_error(
                    "cavity estimator requires edge weights in [0,1]");
}

std::vector<int> nodes_without(int n, int v) {
    std::vector<int> out;
    out.reserve(n - 1);
    for (int i = 0; i < n; ++i)
        if (i != v) out.push_back(i);
    return out;
}

// ln Psi at `root` of the suffix graph drawn by placing `root` at a random
// position among the ball's nodes, keeping the later ones, and
// re-restricting to the radius-r ball around the root.
double sample_ln_psi(const SimpleGraph& ball_graph, int root, int radius,
                     const WeightedGraph& h, Rng& rng, const Budget& budget) {
    const int n = ball_graph.node_count();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<int> suffix = {root};
    bool seen_root = false;
    for (int v : order) {
        if (v == root) {
            seen_root = true;
            continue;
        }
        if (seen_root) suffix.push_back(v);
    }
    std::sort(suffix.begin(), suffix.end());
    SimpleGraph s = ball_graph.induced(suffix);
    int root_in_s = static_cast<int>(
        std::lower_bound(suffix.begin(), suffix.end(), root) -
        suffix.begin());
    // Keep only the nodes the root still reaches within the radius.
    auto dist = s.distances_from(root_in_s);
    std::vector<int> kept;
    for (int i = 0; i < s.node_count(); ++i)
        if (dist[i] >= 0 && dist[i] <= radius) kept.push_back(i);
    SimpleGraph k = s.induced(kept);
    int root_in_k = static_cast<int>(
        std::lower_bound(kept.begin(), kept.end(), root_in_s) - kept.begin());
    double value = psi(k, root_in_k, h, budget);
    if (!(value > 0.0))
        throw precondition_error("cavity estimator hit a vanishing Psi");
    return std::log(value);
}

}  // namespace

double psi(const SimpleGraph& k, int v, const WeightedGraph& h,
           const Budget& budget) {
    if (v < 0 || v >= k.node_count())
        throw argument_error("psi: node " + std::to_string(v) +
                             " out of range");
    require_beta_in_unit_interval(h);
    double denom =
        hom_count(k.induced(nodes_without(k.node_count(), v)), h, budget);
    if (denom == 0.0)
        throw precondition_error(
            "psi: the Gibbs distribution of K - v is degenerate "
            "(hom(K - v, H) = 0)");
    return hom_count(k, h, budget) / (denom * h.alpha_total());
}

double sequential_ln_t(const SimpleGraph& g, const WeightedGraph& h,
                       const std::vector<int>& ordering,
                       const Budget& budget) {
    const int n = g.node_count();
    if (static_cast<int>(ordering.size()) != n)
        throw argument_error("sequential_ln_t: ordering size mismatch");
    std::vector<bool> seen(n, false);
    for (int v : ordering) {
        if (v < 0 || v >= n || seen[v])
            throw argument_error("sequential_ln_t: not a permutation");
        seen[v] = true;
    }
    std::vector<int> remaining(n);
    for (int i = 0; i < n; ++i) remaining[i] = i;
    double total = 0.0;
    for (int v : ordering) {
        SimpleGraph k = g.induced(remaining);
        int pos = static_cast<int>(
            std::lower_bound(remaining.begin(), remaining.end(), v) -
            remaining.begin());
        double value = psi(k, pos, h, budget);
        if (!(value > 0.0))
            throw precondition_error("sequential_ln_t: Psi vanished");
        total += std::log(value);
        remaining.erase(remaining.begin() + pos);
    }
    return total;
}

LocalEstimate local_estimate_details(const SimpleGraph& g,
                                     const WeightedGraph& h,
                                     const CavityConfig& config,
                                     const Budget& budget) {
    if (config.radius < 0)
        throw argument_error("cavity: radius must be nonnegative");
    if (config.ordering_samples < 1)
        throw argument_error("cavity: need at least one ordering sample");
    require_beta_in_unit_interval(h);
    const int n = g.node_count();
    const int d = g.max_degree();
    LocalEstimate out;
    out.kappa = 2.0 * d * h.complement().interaction_norm();
    if (!(out.kappa < 1.0))
        throw precondition_error(
            "cavity estimator has no locality certificate: kappa = " +
            std::to_string(out.kappa) + " is not below 1");
    out.log.per_node = true;
    out.log.error_radius = 0.0;
    if (n == 0) return out;

    // Group nodes by the isomorphism class of their r-ball.
    struct ClassInfo {
        int representative = 0;
        int count = 0;
    };
    std::map<RootedBall, ClassInfo> classes;
    for (int v = 0; v < n; ++v) {
        auto b = ball(g, v, config.radius);
        auto it = classes.find(b);
        if (it == classes.end())
            classes.emplace(std::move(b), ClassInfo{v, 1});
        else
            ++it->second.count;
    }

    double value = 0.0;
    double mc_variance = 0.0;
    for (const auto& [ball_key, info] : classes) {
        // Materialize the representative's ball with its root position.
        auto dist = g.distances_from(info.representative);
        std::vector<int> nodes;
        for (int i = 0; i < n; ++i)
            if (dist[i] >= 0 && dist[i] <= config.radius)
                nodes.push_back(i);
        SimpleGraph ball_graph = g.induced(nodes);
        int root = static_cast<int>(
            std::lower_bound(nodes.begin(), nodes.end(),
                             info.representative) -
            nodes.begin());

        const int s = config.ordering_samples;
        std::vector<double> xs(s, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < s; ++i) {
            Rng rng(mix_seed(config.seed, ball_key.encoding,
                             static_cast<std::uint64_t>(i)));
            xs[i] = sample_ln_psi(ball_graph, root, config.radius, h, rng,
                                  budget);
            assert(xs[i] <= 1e-9 && xs[i] > -std::log(2.0) - 1e-9);
        }
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= s;
        double variance = 0.0;
        for (double x : xs) variance += (x - mean) * (x - mean);
        double se = s > 1 ? std::sqrt(variance / (static_cast<double>(s) *
                                                  (s - 1)))
                          : 0.0;

        BallContribution contribution;
        contribution.ball = ball_key;
        contribution.frequency = static_cast<double>(info.count) / n;
        contribution.x_u = mean;
        contribution.sample_count = s;
        contribution.standard_error = se;
        out.contributions.push_back(contribution);

        value += contribution.frequency * mean;
        mc_variance += contribution.frequency * contribution.frequency * se *
                       se;
    }
    out.log.value = value;
    out.log.error_radius = 2.0 * d * std::pow(out.kappa, config.radius) +
                           3.0 * std::sqrt(mc_variance);
    return out;
}

CertifiedLog local_estimate_ln_t(const SimpleGraph& g, const WeightedGraph& h,
                                 const CavityConfig& config,
                                 const Budget& budget) {
    return local_estimate_details(g, h, config, budget).log;
}

double psi_locality_gap(const SimpleGraph& k, int v, const SimpleGraph& k2,
                        int v2, const WeightedGraph& h, int r,
                        const Budget& budget) {
    if (!(ball(k, v, r) == ball(k2, v2, r)))
        throw argument_error(
            "psi_locality_gap: the radius-" + std::to_string(r) +
            " balls are not isomorphic");
    return std::fabs(psi(k, v, h, budget) - psi(k2, v2, h, budget));
}

WeightedGraph hardcore_weighted_graph(double lambda) {
    if (!(lambda > 0))
        throw precondition_error("hard-core fugacity must be positive");
    std::vector<double> alpha = {1.0 / (1.0 + lambda),
                                 lambda / (1.0 + lambda)};
    std::vector<double> beta = {1.0, 1.0, 1.0, 0.0};
    return WeightedGraph(std::move(alpha), std::move(beta));
}

}  // namespace homexp
