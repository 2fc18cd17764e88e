#include "homexp/canon.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "homexp/errors.hpp"

namespace homexp {

namespace {

// Assigns rank colors (0..k-1) to arbitrary comparable keys, ordered by key.
template <typename Key>
std::vector<int> rank_colors(const std::vector<Key>& keys) {
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> colors(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        colors[i] = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), keys[i]) -
            sorted.begin());
    }
    return colors;
}

// Iterated degree refinement starting from label-free initial colors.  The
// resulting partition and its class order are isomorphism-invariant.
std::vector<int> refine(const SimpleGraph& g, std::vector<int> color) {
    int n = g.node_count();
    int distinct = 1 + *std::max_element(color.begin(), color.end());
    while (true) {
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> nbr_colors;
            nbr_colors.reserve(g.neighbors(v).size());
            for (int w : g.neighbors(v)) nbr_colors.push_back(color[w]);
            std::sort(nbr_colors.begin(), nbr_colors.end());
            sig[v].push_back(color[v]);
            sig[v].insert(sig[v].end(), nbr_colors.begin(), nbr_colors.end());
        }
        color = rank_colors(sig);
        int now = 1 + *std::max_element(color.begin(), color.end());
        if (now == distinct) return color;
        distinct = now;
    }
}

// Minimizes the packed adjacency rows over all orderings that list the
// refinement classes consecutively in class order.  Row p holds the
// adjacency bits of the node at position p toward positions 0..p-1.
class MinPermSearch {
public:
    MinPermSearch(const SimpleGraph& g, const std::vector<int>& color)
        : g_(g), n_(g.node_count()) {
        int num_colors =
            n_ == 0 ? 0 : 1 + *std::max_element(color.begin(), color.end());
        classes_.assign(num_colors, {});
        for (int v = 0; v < n_; ++v) classes_[color[v]].push_back(v);
        class_at_position_.reserve(n_);
        for (int c = 0; c < num_colors; ++c)
            class_at_position_.insert(class_at_position_.end(),
                                      classes_[c].size(), c);
        used_.assign(n_, false);
        pos_adj_.assign(n_, 0);
        placed_.assign(n_, -1);
        best_.assign(n_, std::numeric_limits<std::uint64_t>::max());
        adj_.assign(n_, 0);
        for (int v = 0; v < n_; ++v)
            for (int w : g.neighbors(v)) adj_[v] |= 1ULL << w;
    }

    std::vector<std::uint64_t> run() {
        search(0);
        return best_;
    }

private:
    void search(int p) {
        if (p == n_) return;  // best_ already holds the rows of this leaf
        int tried[64];
        int tried_count = 0;
        for (int u : classes_[class_at_position_[p]]) {
            if (used_[u]) continue;
            std::uint64_t row = pos_adj_[u];
            if (row > best_[p]) continue;
            // Orbit pruning: an unused twin of a candidate already explored
            // at this level (equal partial row, same neighbors elsewhere) is
            // exchangeable with it by an automorphism, so its subtree
            // repeats the explored one.
            bool twin = false;
            for (int t = 0; t < tried_count && !twin; ++t) {
                int v = tried[t];
                twin = pos_adj_[v] == row &&
                       (adj_[u] & ~(1ULL << v)) == (adj_[v] & ~(1ULL << u));
            }
            if (twin) continue;
            tried[tried_count++] = u;
            if (row < best_[p]) {
                best_[p] = row;
                std::fill(best_.begin() + p + 1, best_.end(),
                          std::numeric_limits<std::uint64_t>::max());
            }
            used_[u] = true;
            placed_[p] = u;
            for (int w : g_.neighbors(u)) pos_adj_[w] |= 1ULL << p;
            search(p + 1);
            for (int w : g_.neighbors(u)) pos_adj_[w] &= ~(1ULL << p);
            used_[u] = false;
        }
    }

    const SimpleGraph& g_;
    int n_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_at_position_;
    std::vector<bool> used_;
    std::vector<std::uint64_t> pos_adj_;
    std::vector<int> placed_;
    std::vector<std::uint64_t> best_;
    std::vector<std::uint64_t> adj_;
};

std::string pack_key(char tag, int n, const std::vector<std::uint64_t>& rows) {
    std::string key(1, tag);
    key.push_back(static_cast<char>(n));
    for (std::uint64_t row : rows)
        for (int b = 0; b < 8; ++b)
            key.push_back(static_cast<char>((row >> (8 * b)) & 0xff));
    return key;
}

void check_size(const SimpleGraph& g) {
    if (g.node_count() > 64)
        throw resource_error("canonical form supports at most 64 nodes, got " +
                             std::to_string(g.node_count()));
}

}  // namespace

std::string canonical_key(const SimpleGraph& g) {
    check_size(g);
    if (g.node_count() == 0) return "u";
    std::vector<int> init(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) init[v] = g.degree(v);
    auto color = refine(g, rank_colors(init));
    auto rows = MinPermSearch(g, color).run();
    return pack_key('u', g.node_count(), rows);
}

std::string canonical_rooted_key(const SimpleGraph& g, int root) {
    check_size(g);
    if (root < 0 || root >= g.node_count())
        throw argument_error("root " + std::to_string(root) + " out of range");
    auto dist = g.distances_from(root);
    // Root gets a strictly smaller key than any other node, so it forms the
    // first refinement class and always lands at position 0.
    std::vector<std::pair<int, int>> init(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) {
        int layer = dist[v] < 0 ? g.node_count() + 1 : dist[v];
        init[v] = {v == root ? -1 : layer, g.degree(v)};
    }
    auto color = refine(g, rank_colors(init));
    auto rows = MinPermSearch(g, color).run();
    return pack_key('r', g.node_count(), rows);
}

bool isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;
    return canonical_key(a) == canonical_key(b);
}

bool rooted_isomorphic(const SimpleGraph& a, int root_a, const SimpleGraph& b,
                       int root_b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;
    return canonical_rooted_key(a, root_a) == canonical_rooted_key(b, root_b);
}

}  // namespace homexp
