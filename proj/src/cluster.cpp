#include "homexp/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "homexp/canon.hpp"
#include "homexp/enumeration.hpp"
#include "homexp/errors.hpp"
#include "homexp/homcount.hpp"

namespace homexp {

namespace {

void require_beta_in_unit_interval(const WeightedGraph& h) {
    for (int i = 0; i < h.node_count(); ++i)
        for (int j = i; j < h.node_count(); ++j)
            if (h.beta(i, j) < 0.0 || h.beta(i, j) > 1.0)
                throw precondition_error(
                    "cluster estimator requires edge weights in [0,1]");
}

// v(F,H) in closed form by inclusion-exclusion over node subsets:
//   v(F,H) = sum_{W subset of V(F)} (-1)^{|F|-|W|} ln t(F[W], H).
double v_closed_form(const SimpleGraph& f, const WeightedGraph& h,
                     const Budget& budget) {
    const int n = f.node_count();
    double v = 0.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        std::vector<int> nodes;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) nodes.push_back(i);
        double t = density(f.induced(nodes), h, budget);
        if (!(t > 0.0))
            throw precondition_error(
                "cluster estimator hit a nonpositive density");
        double sign = ((n - static_cast<int>(nodes.size())) % 2 == 0) ? 1.0
                                                                      : -1.0;
        v += sign * std::log(t);
    }
    return v;
}

}  // namespace

ExpansionConstants expansion_constants(int max_degree, const WeightedGraph& h,
                                       double b) {
    if (max_degree < 0)
        throw argument_error("expansion constants: negative degree bound");
    if (!(b > 0))
        throw precondition_error("expansion constants: b must be positive");
    require_beta_in_unit_interval(h);
    ExpansionConstants out;
    out.b = b;
    out.K = (b + std::exp(b)) / std::log1p(b * std::exp(-b));
    out.c_bar = h.complement().interaction_norm();
    out.valid = out.c_bar * out.K * max_degree < 1.0;
    out.epsilon = -std::log(max_degree * out.K * out.c_bar);
    return out;
}

double cluster_v(const SimpleGraph& f, const WeightedGraph& h, int m_max,
                 const Budget& budget) {
    if (m_max < 1)
        throw precondition_error("cluster_v: m_max must be >= 1");
    require_beta_in_unit_interval(h);
    if (f.node_count() == 0 || !f.connected()) return 0.0;
    if (f.node_count() == 1) return 0.0;  // no polymers can cover one node

    auto sys = polymer_system_from<double>(f, h, f.node_count(), budget);
    const int p = static_cast<int>(sys.polymers.size());
    const std::uint64_t all_nodes =
        (std::uint64_t(1) << f.node_count()) - 1;
    std::vector<std::uint64_t> cover(p, 0);
    for (int i = 0; i < p; ++i)
        for (int v : sys.polymers[i].nodes) cover[i] |= std::uint64_t(1) << v;

    std::vector<double> by_order(m_max + 1, 0.0);
    std::uint64_t emitted = 0;
    std::vector<int> mult;
    // For each connected support in the intersection graph that covers all
    // of V(F), sum the multiset-collapsed coefficients over multiplicities.
    std::function<void(const std::vector<int>&, int, double)> compose =
        [&](const std::vector<int>& support, int slot, double activity) {
            if (slot == static_cast<int>(support.size())) {
                if (++emitted > budget.enum_cap)
                    throw resource_error(
                        "cluster_v term enumeration exceeds cap " +
                        std::to_string(budget.enum_cap));
                BigInt cr = sequence_crapo(sys.polymer_graph, support, mult);
                if (cr == 0) return;
                int order = 0;
                double weight = activity;
                for (int a : mult) {
                    order += a;
                    for (int i = 2; i <= a; ++i) weight /= i;
                }
                by_order[order] += static_cast<double>(cr) * weight;
                return;
            }
            int used = 0;
            for (int i = 0; i < slot; ++i) used += mult[i];
            int room = m_max - used -
                       (static_cast<int>(support.size()) - slot - 1);
            double z = sys.activities[support[slot]];
            double power = 1.0;
            for (int a = 1; a <= room; ++a) {
                power *= z;
                mult.push_back(a);
                compose(support, slot + 1, activity * power);
                mult.pop_back();
            }
        };
    auto visit = [&](const std::vector<int>& support) {
        std::uint64_t covered = 0;
        for (int i : support) covered |= cover[i];
        if (covered != all_nodes) return;
        if (static_cast<int>(support.size()) > m_max) return;
        compose(support, 0, 1.0);
    };
    if (p > 0)
        for_each_connected_subset(sys.polymer_graph, -1, 1,
                                  std::min(m_max, p), visit, budget);
    double value = 0.0;
    for (int m = 1; m <= m_max; ++m) value += by_order[m];
    return value;
}

CertifiedLog truncated_ln_t(const SimpleGraph& g, const WeightedGraph& h,
                            int k, double b, const Budget& budget) {
    if (k < 1) throw argument_error("truncated_ln_t: k must be >= 1");
    auto constants = expansion_constants(g.max_degree(), h, b);
    if (!constants.valid)
        throw precondition_error(
            "cluster expansion does not converge: c(complement) = " +
            std::to_string(constants.c_bar) + " is not below 1/(K D) = " +
            std::to_string(1.0 / (constants.K *
                                  std::max(g.max_degree(), 1))) +
            " for b = " + std::to_string(b));

    CertifiedLog out;
    out.per_node = true;
    out.error_radius = constants.b * std::exp(-constants.epsilon * (k + 1));
    if (g.node_count() == 0) return out;

    // ind0 per isomorphism type: count connected induced subgraphs on
    // <= k nodes grouped by canonical form.
    std::map<std::string, std::pair<SimpleGraph, std::uint64_t>> types;
    auto visit = [&](const std::vector<int>& nodes) {
        SimpleGraph f = g.induced(nodes);
        auto key = canonical_key(f);
        auto it = types.find(key);
        if (it == types.end())
            types.emplace(std::move(key), std::make_pair(std::move(f), 1));
        else
            ++it->second.second;
    };
    if (k >= 2)
        for_each_connected_subset(g, -1, 2, std::min(k, g.node_count()),
                                  visit, budget);
    // The map iterates in canonical-key order, so the floating-point
    // reduction order is deterministic.
    double total = 0.0;
    for (const auto& [key, entry] : types) {
        double v = v_closed_form(entry.first, h, budget);
        total += static_cast<double>(entry.second) * v;
    }
    out.value = total / g.node_count();
    return out;
}

std::vector<LnTConvergenceRow> ln_t_convergence_table(
    const std::vector<SimpleGraph>& graphs, const WeightedGraph& h, int k,
    double b, const Budget& budget) {
    std::vector<LnTConvergenceRow> out;
    out.reserve(graphs.size());
    for (const auto& g : graphs) {
        auto log = truncated_ln_t(g, h, k, b, budget);
        LnTConvergenceRow row;
        row.node_count = g.node_count();
        row.value = log.value;
        row.error_radius = log.error_radius;
        row.delta = out.empty() ? 0.0 : log.value - out.back().value;
        out.push_back(row);
    }
    return out;
}

}  // namespace homexp
