#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace homexp {

using Edge = std::pair<int, int>;

// Finite simple graph with nodes 0..n-1.  Immutable after construction;
// edges are stored sorted with u < v and adjacency lists sorted ascending,
// so all iteration orders are deterministic.
class SimpleGraph {
public:
    SimpleGraph() = default;
    SimpleGraph(int node_count, std::vector<Edge> edges);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const;
    int max_degree() const { return max_degree_; }
    bool has_edge(int u, int v) const;

    bool connected() const;
    // Connected components as sorted node lists, ordered by smallest node.
    std::vector<std::vector<int>> components() const;
    // BFS distances from v; unreachable nodes get -1.
    std::vector<int> distances_from(int v) const;

    // Subgraph induced by `nodes` (need not be sorted; duplicates invalid).
    // Node i of the result corresponds to nodes[i].
    SimpleGraph induced(const std::vector<int>& nodes) const;
    SimpleGraph without_node(int v) const;
    SimpleGraph without_nodes(const std::vector<int>& vs) const;

    bool operator==(const SimpleGraph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

    // Constructors for standard families.
    static SimpleGraph edgeless(int n);
    static SimpleGraph path(int n);
    static SimpleGraph cycle(int n);
    static SimpleGraph complete(int n);
    static SimpleGraph star(int leaves);

    // Erdos-Renyi-style random graph conditioned on max degree <= max_deg,
    // sampled edge by edge deterministically from the seed.
    static SimpleGraph random_bounded_degree(int n, int max_deg, double p,
                                             std::uint64_t seed);

    // Text format: "graph <n>" header, one "u v" line per edge, '#' comments.
    static SimpleGraph parse(std::istream& in);
    static SimpleGraph load(const std::string& path);
    void save(std::ostream& out) const;

private:
    int n_ = 0;
    int max_degree_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Disjoint union with nodes of `b` shifted by a.node_count().
SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b);

// Cartesian product a x b: nodes (i,j) flattened as i*|b|+j; edges between
// (i,j),(i',j) for ii' in a and (i,j),(i,j') for jj' in b.
SimpleGraph cartesian_product(const SimpleGraph& a, const SimpleGraph& b);

}  // namespace homexp
