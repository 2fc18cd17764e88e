#include "homexp/localstats.hpp"

#include <algorithm>
#include <vector>

#include "homexp/canon.hpp"
#include "homexp/errors.hpp"

namespace homexp {

RootedBall ball(const SimpleGraph& g, int v, int radius) {
    if (v < 0 || v >= g.node_count())
        throw argument_error("ball: node out of range");
    if (radius < 0) throw argument_error("ball: radius must be >= 0");
    auto dist = g.distances_from(v);
    std::vector<int> nodes;
    for (int u = 0; u < g.node_count(); ++u)
        if (dist[u] >= 0 && dist[u] <= radius) nodes.push_back(u);
    // `v` keeps position 0: distances_from(v) gives dist[v] = 0 and nodes
    // are collected in increasing label order, so relabel v explicitly.
    std::vector<int> ordered;
    ordered.push_back(v);
    for (int u : nodes)
        if (u != v) ordered.push_back(u);
    SimpleGraph b = g.induced(ordered);
    RootedBall out;
    out.encoding = canonical_rooted_key(b, 0);
    out.radius = radius;
    out.node_count = b.node_count();
    return out;
}

NeighborhoodHistogram histogram(const SimpleGraph& g, int radius) {
    if (radius < 0) throw argument_error("histogram: radius must be >= 0");
    const int n = g.node_count();
    if (n == 0) throw argument_error("histogram: graph has no nodes");
    std::vector<RootedBall> balls(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (int v = 0; v < n; ++v) balls[v] = ball(g, v, radius);
    NeighborhoodHistogram out;
    out.radius = radius;
    for (auto& b : balls) out.frequencies[std::move(b)] += Rational(1, n);
    return out;
}

Rational local_distance(const SimpleGraph& g1, const SimpleGraph& g2,
                        int radius) {
    auto h1 = histogram(g1, radius);
    auto h2 = histogram(g2, radius);
    Rational l1 = 0;
    auto it1 = h1.frequencies.begin();
    auto it2 = h2.frequencies.begin();
    while (it1 != h1.frequencies.end() || it2 != h2.frequencies.end()) {
        if (it2 == h2.frequencies.end() ||
            (it1 != h1.frequencies.end() && it1->first < it2->first)) {
            l1 += it1->second;
            ++it1;
        } else if (it1 == h1.frequencies.end() || it2->first < it1->first) {
            l1 += it2->second;
            ++it2;
        } else {
            l1 += abs(it1->second - it2->second);
            ++it1;
            ++it2;
        }
    }
    return l1 / 2;
}

std::string hex_encoding(const RootedBall& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.encoding.size() * 2);
    for (unsigned char c : b.encoding) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

}  // namespace homexp
