#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "homexp/config.hpp"
#include "homexp/graph.hpp"
#include "homexp/numeric.hpp"

namespace homexp {

// Subgraph families of a host graph:
//   Sub   subgraphs without isolated nodes (nonempty edge subsets),
//   Con   connected subgraphs with >= 2 nodes,
//   CInd  connected induced subgraphs with >= 2 nodes,
//   CSpan connected spanning subgraphs (>= 1 node),
//   SpTr  spanning trees.
enum class FamilyKind { Sub, Con, CInd, CSpan, SpTr };

FamilyKind family_kind_from_name(const std::string& name);
std::string family_kind_name(FamilyKind kind);

// One member, in host labels.  `nodes` sorted ascending, `edges` sorted
// pairs with u < v; together they identify the member uniquely.
struct FamilyMember {
    std::vector<int> nodes;
    std::vector<Edge> edges;

    // The member relabeled to nodes 0..|nodes|-1 following `nodes` order.
    SimpleGraph as_graph() const;

    bool operator==(const FamilyMember&) const = default;
};

struct SubgraphFamily {
    FamilyKind kind;
    std::vector<FamilyMember> members;  // sorted by (nodes, edges)
};

SubgraphFamily enumerate_family(const SimpleGraph& g, FamilyKind kind,
                                int max_nodes,
                                const Budget& budget = default_budget());

// Membership predicate used to re-validate enumeration output.
bool family_contains(const SimpleGraph& g, FamilyKind kind,
                     const FamilyMember& member);

// Visits every connected node subset S of g (sorted node lists) with
// min_size <= |S| <= max_size exactly once; returns the number visited.
// When root >= 0 only subsets containing `root` are visited.
std::uint64_t for_each_connected_subset(
    const SimpleGraph& g, int root, int min_size, int max_size,
    const std::function<void(const std::vector<int>&)>& visit,
    const Budget& budget = default_budget());

// Exact number of spanning trees (Kirchhoff; integer-preserving
// elimination).
BigInt spanning_tree_count(const SimpleGraph& g);

// Exact number of k-node subtrees of g containing v.
BigInt count_rooted_subtrees(const SimpleGraph& g, int v, int k,
                             const Budget& budget = default_budget());

// Exact number of connected k-node subgraphs (node set + edge subset)
// containing v.
BigInt count_rooted_connected_subgraphs(const SimpleGraph& g, int v, int k,
                                        const Budget& budget = default_budget());

// (1/k) C(kD, k-1): the k-node rooted-subtree count of the infinite D-ary
// tree, an upper bound for graphs of max degree <= D.
BigInt subtree_bound(int max_degree, int k);

}  // namespace homexp
