#pragma once

#include <map>
#include <string>

#include "homexp/config.hpp"
#include "homexp/graph.hpp"
#include "homexp/numeric.hpp"

namespace homexp {

// Canonical encoding of the rooted r-ball about a node: two balls compare
// byte-equal exactly when a root-preserving isomorphism exists.
struct RootedBall {
    std::string encoding;  // canonical bytes, root at index 0
    int radius = 0;
    int node_count = 0;

    bool operator==(const RootedBall& other) const {
        return encoding == other.encoding;
    }
    bool operator<(const RootedBall& other) const {
        return encoding < other.encoding;
    }
};

// Exact distribution of r-balls over the nodes of a graph; frequencies are
// positive rationals summing to 1.
struct NeighborhoodHistogram {
    int radius = 0;
    std::map<RootedBall, Rational> frequencies;
};

// The ball B_G(v,r): subgraph induced by nodes at distance <= r from v,
// canonically encoded with the root distinguished.
RootedBall ball(const SimpleGraph& g, int v, int radius);

// Exact mu(G, .) at the given radius.
NeighborhoodHistogram histogram(const SimpleGraph& g, int radius);

// Total variation distance (half the L1 difference) between the radius-r
// histograms of the two graphs.
Rational local_distance(const SimpleGraph& g1, const SimpleGraph& g2,
                        int radius);

// Printable lowercase-hex form of a ball encoding, used by the CLI.
std::string hex_encoding(const RootedBall& b);

}  // namespace homexp
