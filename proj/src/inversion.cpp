#include "homexp/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "homexp/canon.hpp"
#include "homexp/errors.hpp"
#include "homexp/homcount.hpp"
#include "homexp/polymer.hpp"

namespace homexp {

namespace {

// One connected subgraph of a family member: node and edge subsets plus the
// per-target values t(J, H_j - 1) = q^-|J| (-delta)^|E(J)| hom(J, F_j).
struct ConnectedSub {
    std::uint32_t node_mask = 0;
    std::uint32_t edge_mask = 0;
    int node_count = 0;
    std::vector<double> t_values;
};

bool connected_spanning(int node_count, const std::vector<Edge>& edges) {
    if (node_count <= 1) return false;
    std::vector<int> parent(node_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    int components = node_count;
    for (const auto& [u, v] : edges) {
        int ru = find(u), rv = find(v);
        if (ru != rv) {
            parent[ru] = rv;
            --components;
        }
    }
    return components == 1;
}

void check_family(const GraphFamily& family) {
    if (family.members.empty())
        throw argument_error("the graph family is empty");
}

int family_max_nodes(const GraphFamily& family) {
    int m = 0;
    for (const auto& f : family.members) m = std::max(m, f.node_count());
    return m;
}

void check_target_size(const GraphFamily& family, int q) {
    if (q <= family_max_nodes(family))
        throw argument_error("target size q = " + std::to_string(q) +
                             " must exceed the largest family member");
}

void check_delta(double delta) {
    if (!(delta > 0.0) || delta > 1.0)
        throw argument_error("delta must lie in (0, 1]");
}

// Infinity-norm of a square matrix.
double norm_inf(const std::vector<std::vector<double>>& m) {
    double best = 0.0;
    for (const auto& row : m) {
        double sum = 0.0;
        for (double x : row) sum += std::fabs(x);
        best = std::max(best, sum);
    }
    return best;
}

// Inverse by Gauss-Jordan elimination with partial pivoting.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0)
            throw precondition_error(
                "the u matrix is numerically singular; increase q");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double scale = 1.0 / a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0.0) continue;
            const double factor = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= factor * a[col][j];
                inv[r][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace

GraphFamily build_family(int m) {
    if (m < 2 || m > 5)
        throw argument_error("family bound m must lie in 2..5, got " +
                             std::to_string(m));
    struct Entry {
        int nodes;
        int edges;
        std::string key;
        SimpleGraph graph;
    };
    std::vector<Entry> entries;
    std::map<std::string, bool> seen;
    for (int k = 2; k <= m; ++k) {
        std::vector<Edge> pairs;
        for (int u = 0; u < k; ++u)
            for (int v = u + 1; v < k; ++v) pairs.push_back({u, v});
        const std::uint32_t all = 1u << pairs.size();
        for (std::uint32_t mask = 1; mask < all; ++mask) {
            std::vector<Edge> edges;
            for (std::size_t e = 0; e < pairs.size(); ++e)
                if (mask >> e & 1u) edges.push_back(pairs[e]);
            if (!connected_spanning(k, edges)) continue;
            SimpleGraph g(k, std::move(edges));
            auto key = canonical_key(g);
            if (seen.emplace(key, true).second)
                entries.push_back({k, g.edge_count(), key, std::move(g)});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) {
                  return std::tie(a.nodes, a.edges, a.key) <
                         std::tie(b.nodes, b.edges, b.key);
              });
    GraphFamily family;
    for (auto& entry : entries) family.members.push_back(std::move(entry.graph));
    return family;
}

HomMatrices hom_matrices(const GraphFamily& family, const Budget& budget) {
    check_family(family);
    const int n = static_cast<int>(family.members.size());
    HomMatrices out;
    out.inj.assign(n, std::vector<BigInt>(n, BigInt(0)));
    out.surj.assign(n, std::vector<BigInt>(n, BigInt(0)));
    out.hom.assign(n, std::vector<BigInt>(n, BigInt(0)));
    out.aut.assign(n, BigInt(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto counts =
                inj_ind_surj_aut(family.members[i], family.members[j], budget);
            out.inj[i][j] = counts.inj;
            out.surj[i][j] = counts.surj;
            out.hom[i][j] = counts.hom;
            if (i == j) out.aut[i] = counts.aut;
        }
    for (int i = 0; i < n; ++i) {
        if (out.aut[i] <= 0 || out.inj[i][i] != out.aut[i] ||
            out.surj[i][i] != out.aut[i])
            throw std::logic_error(
                "internal consistency: family diagonal is not aut(F)");
        for (int j = 0; j < n; ++j) {
            if (i > j && out.inj[i][j] != 0)
                throw std::logic_error(
                    "internal consistency: inj matrix is not upper "
                    "triangular under the family order");
            if (i < j && out.surj[i][j] != 0)
                throw std::logic_error(
                    "internal consistency: surj matrix is not lower "
                    "triangular under the family order");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational sum(0);
            for (int k = 0; k < n; ++k)
                sum += Rational(out.surj[i][k] * out.inj[k][j]) /
                       Rational(out.aut[k]);
            if (sum != Rational(out.hom[i][j]))
                throw std::logic_error(
                    "internal consistency: hom != surj diag(aut)^-1 inj");
        }
    return out;
}

std::vector<WeightedGraph> build_targets(const GraphFamily& family, int q,
                                         bool weighted, double delta) {
    check_family(family);
    check_target_size(family, q);
    check_delta(delta);
    std::vector<WeightedGraph> targets;
    targets.reserve(family.members.size());
    for (const auto& f : family.members) {
        const int nf = f.node_count();
        const int n = weighted ? nf + 1 : q;
        std::vector<double> alpha(n, 1.0);
        if (weighted) alpha[nf] = static_cast<double>(q - nf);
        std::vector<double> beta(static_cast<std::size_t>(n) * n, 1.0);
        for (const auto& [u, v] : f.edges()) {
            beta[static_cast<std::size_t>(u) * n + v] = 1.0 - delta;
            beta[static_cast<std::size_t>(v) * n + u] = 1.0 - delta;
        }
        targets.emplace_back(std::move(alpha), std::move(beta));
    }
    return targets;
}

std::vector<std::vector<double>> u_coefficients(const GraphFamily& family,
                                                int q, int k_max, double delta,
                                                const Budget& budget) {
    check_family(family);
    check_target_size(family, q);
    check_delta(delta);
    const int n = static_cast<int>(family.members.size());
    if (family_max_nodes(family) > 4)
        throw argument_error(
            "u coefficients are limited to families of graphs with at most "
            "4 nodes");
    if (k_max < 0) throw argument_error("k_max must be nonnegative");
    if (k_max == 0) k_max = n;

    // hom(J, F_j) for every connected subgraph type J encountered, shared
    // across family members.
    std::map<std::string, std::vector<double>> hom_memo;
    auto hom_row = [&](const SimpleGraph& j_graph) {
        auto key = canonical_key(j_graph);
        auto it = hom_memo.find(key);
        if (it != hom_memo.end()) return it->second;
        std::vector<double> row(n);
        for (int j = 0; j < n; ++j)
            row[j] = to_double(
                Rational(hom_count(j_graph, family.members[j], budget)));
        return hom_memo.emplace(std::move(key), std::move(row)).first->second;
    };

    std::vector<std::vector<double>> u(n, std::vector<double>(n, 0.0));
    std::uint64_t steps = 0;
    for (int i = 0; i < n; ++i) {
        const auto& f = family.members[i];
        const int nf = f.node_count();
        const auto& f_edges = f.edges();
        const std::uint32_t full_edges = (1u << f_edges.size()) - 1u;

        // Enumerate Con(F_i): connected subgraphs with >= 2 nodes, as node
        // and edge subsets.
        std::vector<ConnectedSub> subs;
        for (std::uint32_t node_mask = 0; node_mask < (1u << nf);
             ++node_mask) {
            if (__builtin_popcount(node_mask) < 2) continue;
            std::vector<int> edge_ids;
            for (std::size_t e = 0; e < f_edges.size(); ++e)
                if ((node_mask >> f_edges[e].first & 1u) &&
                    (node_mask >> f_edges[e].second & 1u))
                    edge_ids.push_back(static_cast<int>(e));
            for (std::uint32_t pick = 1; pick < (1u << edge_ids.size());
                 ++pick) {
                std::vector<int> relabel(nf, -1);
                std::vector<int> nodes;
                for (int v = 0; v < nf; ++v)
                    if (node_mask >> v & 1u) {
                        relabel[v] = static_cast<int>(nodes.size());
                        nodes.push_back(v);
                    }
                std::vector<Edge> edges;
                std::uint32_t edge_mask = 0;
                for (std::size_t e = 0; e < edge_ids.size(); ++e)
                    if (pick >> e & 1u) {
                        edge_mask |= 1u << edge_ids[e];
                        edges.push_back({relabel[f_edges[edge_ids[e]].first],
                                         relabel[f_edges[edge_ids[e]].second]});
                    }
                const int nodes_used = static_cast<int>(nodes.size());
                if (!connected_spanning(nodes_used, edges)) continue;
                SimpleGraph j_graph(nodes_used, std::move(edges));
                ConnectedSub sub;
                sub.node_mask = node_mask;
                sub.edge_mask = edge_mask;
                sub.node_count = nodes_used;
                const auto& homs = hom_row(j_graph);
                const double scale =
                    std::pow(static_cast<double>(q), -nodes_used) *
                    std::pow(-delta, j_graph.edge_count());
                sub.t_values.resize(n);
                for (int j = 0; j < n; ++j)
                    sub.t_values[j] = scale * homs[j];
                subs.push_back(std::move(sub));
            }
        }

        // Suffix unions for pruning: what the remaining candidates can
        // still cover.
        std::vector<std::uint32_t> suffix_cover(subs.size() + 1, 0);
        for (int s = static_cast<int>(subs.size()) - 1; s >= 0; --s)
            suffix_cover[s] = suffix_cover[s + 1] | subs[s].edge_mask;

        std::vector<int> support;
        std::vector<int> mult;
        std::vector<double> products(n);

        // Multiplicities a_r >= 1 with sum <= k_max over the chosen
        // support; the sequence graph invariant weights each assignment.
        auto accumulate = [&](const SimpleGraph& intersection) {
            const int s = static_cast<int>(support.size());
            mult.assign(s, 1);
            std::vector<std::vector<double>> powers(
                s + 1, std::vector<double>(n, 1.0));
            std::vector<int> order(s);
            std::iota(order.begin(), order.end(), 0);
            // Depth-first over multiplicity vectors: position r chooses
            // a_r, carrying prod_j t_r^a_r / a_r! for each target.
            std::function<void(int, int)> rec = [&](int r, int used) {
                if (r == s) {
                    if ((steps += s) > budget.enum_cap)
                        throw resource_error(
                            "u coefficient enumeration exceeded the "
                            "enumeration budget");
                    BigInt cr = sequence_crapo(intersection, order, mult);
                    if (cr == 0) return;
                    const double cr_value = to_double(Rational(cr));
                    for (int j = 0; j < n; ++j)
                        u[i][j] += cr_value * powers[s][j];
                    return;
                }
                const int remaining = s - r - 1;
                double factorial = 1.0;
                for (int a = 1; used + a + remaining <= k_max; ++a) {
                    factorial *= a;
                    mult[r] = a;
                    for (int j = 0; j < n; ++j)
                        powers[r + 1][j] = powers[r][j] *
                                           std::pow(subs[support[r]].t_values[j],
                                                    a) /
                                           factorial;
                    rec(r + 1, used + a);
                }
                mult[r] = 1;
            };
            rec(0, 0);
        };

        // Depth-first over supports (sets of distinct subgraphs) whose
        // union covers F_i exactly.
        std::function<void(int, std::uint32_t)> extend =
            [&](int next, std::uint32_t covered) {
                if (++steps > budget.enum_cap)
                    throw resource_error(
                        "u coefficient enumeration exceeded the enumeration "
                        "budget");
                if (covered == full_edges) {
                    std::vector<Edge> meets;
                    const int s = static_cast<int>(support.size());
                    for (int a = 0; a < s; ++a)
                        for (int b = a + 1; b < s; ++b)
                            if (subs[support[a]].node_mask &
                                subs[support[b]].node_mask)
                                meets.push_back({a, b});
                    SimpleGraph intersection(s, std::move(meets));
                    if (intersection.connected()) accumulate(intersection);
                }
                if (static_cast<int>(support.size()) >= k_max) return;
                for (int s = next; s < static_cast<int>(subs.size()); ++s) {
                    if ((covered | suffix_cover[s]) != full_edges) break;
                    support.push_back(s);
                    extend(s + 1, covered | subs[s].edge_mask);
                    support.pop_back();
                }
            };
        extend(0, 0);
    }
    return u;
}

InversionSystem build_system(const GraphFamily& family, int q, int k_max,
                             bool weighted, double delta,
                             const Budget& budget) {
    check_family(family);
    InversionSystem system;
    system.reported = static_cast<int>(family.members.size());
    system.q = q;
    system.delta = delta;
    system.collapsed = weighted;

    // Pad with the guard ring of (m+1)-node connected types when the
    // requested family is a prefix of the enlarged standard family; the
    // extra slots soak up the leading tail alias.
    const int m_req = family_max_nodes(family);
    system.family = family;
    if (m_req < 4 && q > m_req + 1) {
        GraphFamily guard = build_family(m_req + 1);
        bool prefix =
            guard.members.size() >= family.members.size();
        for (int i = 0; prefix && i < system.reported; ++i)
            prefix = canonical_key(guard.members[i]) ==
                     canonical_key(family.members[i]);
        if (prefix) system.family = std::move(guard);
    }

    const int n = static_cast<int>(system.family.members.size());
    if (k_max == 0) k_max = std::min(n, 4);
    system.targets = build_targets(system.family, q, weighted, delta);
    system.u_matrix = u_coefficients(system.family, q, k_max, delta, budget);
    system.w_matrix = invert(system.u_matrix);
    system.condition_number =
        norm_inf(system.u_matrix) * norm_inf(system.w_matrix);
    system.residual_bound = std::pow(
        static_cast<double>(q), -(family_max_nodes(system.family) + 1));
    return system;
}

std::vector<double> recover_counts(const SimpleGraph& g,
                                   const InversionSystem& system,
                                   const Budget& budget) {
    const int n = static_cast<int>(system.targets.size());
    if (n == 0 || system.family.members.empty())
        throw argument_error("the inversion system is empty");
    // Collapsed targets give exactly the same partition functions while
    // keeping the target side small for the elimination tables.
    auto eval_targets = build_targets(system.family, system.q, true,
                                      system.delta);
    std::vector<double> ln_t(n);
    for (int j = 0; j < n; ++j) {
        const double value = hom_count(g, eval_targets[j], budget);
        if (!(value > 0.0))
            throw precondition_error(
                "recover_counts: hom(G, H_j) vanished; the target "
                "construction guarantees a positive value");
        ln_t[j] = std::log(value) -
                  g.node_count() * std::log(eval_targets[j].alpha_total());
    }
    std::vector<double> recovered(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            recovered[i] += system.w_matrix[j][i] * ln_t[j];
    const int reported = system.reported > 0 && system.reported <= n
                             ? system.reported
                             : n;
    recovered.resize(reported);
    return recovered;
}

}  // namespace homexp
