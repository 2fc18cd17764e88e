#include "homexp/enumeration.hpp"

#include <algorithm>
#include <numeric>

#include "homexp/errors.hpp"

namespace homexp {

FamilyKind family_kind_from_name(const std::string& name) {
    if (name == "sub") return FamilyKind::Sub;
    if (name == "con") return FamilyKind::Con;
    if (name == "cind") return FamilyKind::CInd;
    if (name == "cspan") return FamilyKind::CSpan;
    if (name == "sptr") return FamilyKind::SpTr;
    throw argument_error("unknown family kind: " + name);
}

std::string family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Sub: return "sub";
        case FamilyKind::Con: return "con";
        case FamilyKind::CInd: return "cind";
        case FamilyKind::CSpan: return "cspan";
        case FamilyKind::SpTr: return "sptr";
    }
    throw argument_error("bad family kind");
}

SimpleGraph FamilyMember::as_graph() const {
    std::vector<int> index;
    index.resize(nodes.empty() ? 0 : *std::max_element(nodes.begin(),
                                                       nodes.end()) + 1,
                 -1);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        index[nodes[i]] = static_cast<int>(i);
    std::vector<Edge> local;
    local.reserve(edges.size());
    for (auto [u, v] : edges) local.emplace_back(index[u], index[v]);
    return SimpleGraph(static_cast<int>(nodes.size()), std::move(local));
}

namespace {

// Checks whether the subgraph (nodes(E'), E') given by an edge subset is
// connected; nodes are the endpoints of the subset.
bool edge_subset_connected(const std::vector<Edge>& edges) {
    if (edges.empty()) return false;
    std::vector<int> nodes;
    for (auto [u, v] : edges) {
        nodes.push_back(u);
        nodes.push_back(v);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    // Union-find over the endpoint set.
    std::vector<int> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto local = [&](int v) {
        return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(),
                                                 v) -
                                nodes.begin());
    };
    std::size_t merges = 0;
    for (auto [u, v] : edges) {
        int a = find(local(u)), b = find(local(v));
        if (a != b) {
            parent[a] = b;
            ++merges;
        }
    }
    return merges + 1 == nodes.size();
}

std::vector<int> endpoint_nodes(const std::vector<Edge>& edges) {
    std::vector<int> nodes;
    for (auto [u, v] : edges) {
        nodes.push_back(u);
        nodes.push_back(v);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

// Enumerates edge subsets of g and keeps those passing `accept`; used for
// the edge-set-determined families (Sub, Con, CSpan, SpTr).
template <typename Accept>
std::vector<FamilyMember> edge_subset_members(const SimpleGraph& g,
                                              std::uint64_t cap,
                                              Accept&& accept) {
    int m = g.edge_count();
    if (m > 62)
        throw resource_error("enumeration cap: 2^" + std::to_string(m) +
                             " edge subsets exceed the member cap");
    std::uint64_t total = 1ULL << m;
    if (total > cap)
        throw resource_error(
            "enumeration cap: projected " + std::to_string(total) +
            " members exceed cap " + std::to_string(cap));
    std::vector<FamilyMember> members;
    const auto& all_edges = g.edges();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<Edge> subset;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) subset.push_back(all_edges[i]);
        FamilyMember member{endpoint_nodes(subset), std::move(subset)};
        if (accept(member)) members.push_back(std::move(member));
    }
    return members;
}

}  // namespace

namespace {

// Grows connected supersets of the start node within `g`, visiting each
// exactly once.  Candidates are offered in a fixed order and a node skipped
// at one loop position stays excluded in that subtree (minimum-index rule:
// only nodes above the start node are ever offered).
struct ConnectedSubsetWalk {
    const SimpleGraph& g;
    int min_size, max_size;
    const std::function<void(const std::vector<int>&)>& visit;
    std::uint64_t cap;
    std::uint64_t count = 0;
    int start = 0;

    void run_from(int s) {
        start = s;
        std::vector<int> cand;
        std::uint64_t offered = 1ULL << s;
        for (int w : g.neighbors(s)) {
            if (w > s) {
                cand.push_back(w);
                offered |= 1ULL << w;
            }
        }
        grow(1ULL << s, cand, offered, 1);
    }

    void grow(std::uint64_t set, const std::vector<int>& cand,
              std::uint64_t offered, int size) {
        if (size >= min_size) {
            if (++count > cap)
                throw resource_error("enumeration cap: more than " +
                                     std::to_string(cap) +
                                     " connected subsets");
            std::vector<int> nodes;
            nodes.reserve(size);
            for (int v = 0; v < g.node_count(); ++v)
                if (set >> v & 1) nodes.push_back(v);
            visit(nodes);
        }
        if (size == max_size) return;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            int x = cand[i];
            std::vector<int> next(cand.begin() + i + 1, cand.end());
            std::uint64_t offered2 = offered;
            for (int w : g.neighbors(x)) {
                if (w > start && !(offered2 >> w & 1)) {
                    next.push_back(w);
                    offered2 |= 1ULL << w;
                }
            }
            grow(set | (1ULL << x), next, offered2, size + 1);
        }
    }
};

}  // namespace

std::uint64_t for_each_connected_subset(
    const SimpleGraph& g, int root, int min_size, int max_size,
    const std::function<void(const std::vector<int>&)>& visit,
    const Budget& budget) {
    int n = g.node_count();
    if (n > 64)
        throw resource_error(
            "enumeration cap: connected-subset enumeration supports at most "
            "64 nodes");
    if (max_size <= 0 || n == 0) return 0;

    if (root >= 0) {
        if (root >= n) throw argument_error("root node out of range");
        // Relabel so the root is the minimum node; subsets containing the
        // minimum node are exactly the ones grown from it.
        std::vector<int> order{root};
        for (int v = 0; v < n; ++v)
            if (v != root) order.push_back(v);
        SimpleGraph relabeled = g.induced(order);
        std::function<void(const std::vector<int>&)> mapped =
            [&](const std::vector<int>& local) {
                std::vector<int> host;
                host.reserve(local.size());
                for (int v : local) host.push_back(order[v]);
                std::sort(host.begin(), host.end());
                visit(host);
            };
        ConnectedSubsetWalk walk{relabeled, min_size, max_size, mapped,
                                 budget.enum_cap};
        walk.run_from(0);
        return walk.count;
    }

    ConnectedSubsetWalk walk{g, min_size, max_size, visit, budget.enum_cap};
    for (int s = 0; s < n; ++s) walk.run_from(s);
    return walk.count;
}

SubgraphFamily enumerate_family(const SimpleGraph& g, FamilyKind kind,
                                int max_nodes, const Budget& budget) {
    if (max_nodes < 1) throw argument_error("max_nodes must be >= 1");
    int n = g.node_count();
    std::vector<FamilyMember> members;
    switch (kind) {
        case FamilyKind::Sub:
            members = edge_subset_members(g, budget.enum_cap,
                                          [&](const FamilyMember& m) {
                                              return !m.edges.empty() &&
                                                     static_cast<int>(
                                                         m.nodes.size()) <=
                                                         max_nodes;
                                          });
            break;
        case FamilyKind::Con:
            members = edge_subset_members(
                g, budget.enum_cap, [&](const FamilyMember& m) {
                    return static_cast<int>(m.nodes.size()) <= max_nodes &&
                           edge_subset_connected(m.edges);
                });
            break;
        case FamilyKind::CSpan:
            if (n == 1) {
                if (max_nodes >= 1) members.push_back({{0}, {}});
            } else if (n <= max_nodes) {
                members = edge_subset_members(
                    g, budget.enum_cap, [&](const FamilyMember& m) {
                        return static_cast<int>(m.nodes.size()) == n &&
                               edge_subset_connected(m.edges);
                    });
            }
            break;
        case FamilyKind::SpTr:
            if (n == 1) {
                if (max_nodes >= 1) members.push_back({{0}, {}});
            } else if (n <= max_nodes) {
                members = edge_subset_members(
                    g, budget.enum_cap, [&](const FamilyMember& m) {
                        return static_cast<int>(m.edges.size()) == n - 1 &&
                               static_cast<int>(m.nodes.size()) == n &&
                               edge_subset_connected(m.edges);
                    });
            }
            break;
        case FamilyKind::CInd: {
            for_each_connected_subset(
                g, -1, 2, std::min(max_nodes, n),
                [&](const std::vector<int>& nodes) {
                    std::vector<Edge> edges;
                    for (std::size_t i = 0; i < nodes.size(); ++i)
                        for (std::size_t j = i + 1; j < nodes.size(); ++j)
                            if (g.has_edge(nodes[i], nodes[j]))
                                edges.emplace_back(nodes[i], nodes[j]);
                    members.push_back({nodes, std::move(edges)});
                },
                budget);
            break;
        }
    }
    if (members.size() > budget.enum_cap)
        throw resource_error("enumeration cap: " +
                             std::to_string(members.size()) + " members");
    std::sort(members.begin(), members.end(),
              [](const FamilyMember& a, const FamilyMember& b) {
                  return std::tie(a.nodes, a.edges) <
                         std::tie(b.nodes, b.edges);
              });
    return {kind, std::move(members)};
}

bool family_contains(const SimpleGraph& g, FamilyKind kind,
                     const FamilyMember& member) {
    // Structural sanity in host labels.
    for (int v : member.nodes)
        if (v < 0 || v >= g.node_count()) return false;
    if (!std::is_sorted(member.nodes.begin(), member.nodes.end()) ||
        std::adjacent_find(member.nodes.begin(), member.nodes.end()) !=
            member.nodes.end())
        return false;
    for (auto [u, v] : member.edges) {
        if (!g.has_edge(u, v)) return false;
        if (u > v) return false;
        if (!std::binary_search(member.nodes.begin(), member.nodes.end(), u) ||
            !std::binary_search(member.nodes.begin(), member.nodes.end(), v))
            return false;
    }
    std::vector<Edge> sorted_edges = member.edges;
    std::sort(sorted_edges.begin(), sorted_edges.end());
    if (std::adjacent_find(sorted_edges.begin(), sorted_edges.end()) !=
        sorted_edges.end())
        return false;

    SimpleGraph sub = member.as_graph();
    int size = static_cast<int>(member.nodes.size());
    switch (kind) {
        case FamilyKind::Sub:
            if (member.edges.empty()) return false;
            for (int v = 0; v < size; ++v)
                if (sub.degree(v) == 0) return false;
            return true;
        case FamilyKind::Con:
            return size >= 2 && sub.connected();
        case FamilyKind::CInd: {
            if (size < 2 || !sub.connected()) return false;
            // Induced: every host edge inside the node set is present.
            std::size_t expect = 0;
            for (std::size_t i = 0; i < member.nodes.size(); ++i)
                for (std::size_t j = i + 1; j < member.nodes.size(); ++j)
                    if (g.has_edge(member.nodes[i], member.nodes[j])) ++expect;
            return member.edges.size() == expect;
        }
        case FamilyKind::CSpan:
            return size == g.node_count() && sub.connected();
        case FamilyKind::SpTr:
            return size == g.node_count() && sub.connected() &&
                   static_cast<int>(member.edges.size()) == size - 1;
    }
    return false;
}

BigInt spanning_tree_count(const SimpleGraph& g) {
    int n = g.node_count();
    if (n <= 1) return 1;
    if (!g.connected()) return 0;
    // Reduced Laplacian determinant via fraction-free (Bareiss) elimination.
    int m = n - 1;
    std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(m, 0));
    for (int i = 0; i < m; ++i) a[i][i] = g.degree(i + 1);
    for (auto [u, v] : g.edges()) {
        if (u >= 1 && v >= 1) {
            a[u - 1][v - 1] -= 1;
            a[v - 1][u - 1] -= 1;
        }
    }
    BigInt prev = 1;
    for (int k = 0; k < m; ++k) {
        if (a[k][k] == 0) {
            int pivot = -1;
            for (int r = k + 1; r < m; ++r)
                if (a[r][k] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return 0;
            std::swap(a[k], a[pivot]);
            for (auto& x : a[k]) x = -x;  // row swap flips the sign
        }
        for (int i = k + 1; i < m; ++i) {
            for (int j = k + 1; j < m; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return a[m - 1][m - 1];
}

BigInt count_rooted_subtrees(const SimpleGraph& g, int v, int k,
                             const Budget& budget) {
    if (k < 1) throw argument_error("k must be >= 1");
    if (k == 1) return 1;
    BigInt total = 0;
    for_each_connected_subset(
        g, v, k, k,
        [&](const std::vector<int>& nodes) {
            total += spanning_tree_count(g.induced(nodes));
        },
        budget);
    return total;
}

BigInt count_rooted_connected_subgraphs(const SimpleGraph& g, int v, int k,
                                        const Budget& budget) {
    if (k < 1) throw argument_error("k must be >= 1");
    if (k == 1) return 1;
    BigInt total = 0;
    for_each_connected_subset(
        g, v, k, k,
        [&](const std::vector<int>& nodes) {
            SimpleGraph sub = g.induced(nodes);
            int m = sub.edge_count();
            if (m > 30)
                throw resource_error(
                    "enumeration cap: too many edges in induced subgraph");
            std::uint64_t spanning = 0;
            for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
                std::vector<Edge> subset;
                for (int i = 0; i < m; ++i)
                    if (mask >> i & 1) subset.push_back(sub.edges()[i]);
                if (static_cast<int>(endpoint_nodes(subset).size()) == k &&
                    edge_subset_connected(subset))
                    ++spanning;
            }
            total += spanning;
        },
        budget);
    return total;
}

BigInt subtree_bound(int max_degree, int k) {
    if (max_degree < 1 || k < 1)
        throw argument_error("subtree_bound needs D >= 1 and k >= 1");
    if (static_cast<long long>(max_degree) * k > 1'000'000)
        throw resource_error("subtree_bound: kD too large for exact mode");
    BigInt numerator = binomial(static_cast<std::uint64_t>(k) * max_degree,
                                static_cast<std::uint64_t>(k) - 1);
    if (numerator % k != 0)
        throw error("subtree_bound: unexpected non-integer value");
    return numerator / k;
}

}  // namespace homexp
