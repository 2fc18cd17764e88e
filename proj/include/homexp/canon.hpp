#pragma once

#include <string>

#include "homexp/graph.hpp"

namespace homexp {

// Canonical byte string for a graph: two graphs produce the same key iff
// they are isomorphic.  Supports up to 64 nodes.
std::string canonical_key(const SimpleGraph& g);

// Root-preserving canonical key: equal iff some isomorphism maps root to
// root.  Used for rooted-ball classification.
std::string canonical_rooted_key(const SimpleGraph& g, int root);

bool isomorphic(const SimpleGraph& a, const SimpleGraph& b);
bool rooted_isomorphic(const SimpleGraph& a, int root_a, const SimpleGraph& b,
                       int root_b);

}  // namespace homexp
