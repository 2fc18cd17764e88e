#include "homexp/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "homexp/errors.hpp"
#include "homexp/numeric.hpp"

namespace homexp {

SimpleGraph::SimpleGraph(int node_count, std::vector<Edge> edges)
    : n_(node_count) {
    if (node_count < 0) throw argument_error("negative node count");
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) {
            throw argument_error("edge (" + std::to_string(u) + "," +
                                 std::to_string(v) + ") out of range for " +
                                 std::to_string(n_) + " nodes");
        }
        if (u == v)
            throw argument_error("loop at node " + std::to_string(u) +
                                 " not allowed in a simple graph");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    adj_.assign(n_, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        max_degree_ = std::max(max_degree_, static_cast<int>(nbrs.size()));
    }
}

const std::vector<int>& SimpleGraph::neighbors(int v) const {
    if (v < 0 || v >= n_)
        throw argument_error("node " + std::to_string(v) + " out of range");
    return adj_[v];
}

int SimpleGraph::degree(int v) const {
    return static_cast<int>(neighbors(v).size());
}

bool SimpleGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<int> SimpleGraph::distances_from(int v) const {
    if (v < 0 || v >= n_)
        throw argument_error("node " + std::to_string(v) + " out of range");
    std::vector<int> dist(n_, -1);
    std::deque<int> queue{v};
    dist[v] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : adj_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

bool SimpleGraph::connected() const {
    if (n_ <= 1) return true;
    auto dist = distances_from(0);
    return std::none_of(dist.begin(), dist.end(),
                        [](int d) { return d < 0; });
}

std::vector<std::vector<int>> SimpleGraph::components() const {
    std::vector<std::vector<int>> result;
    std::vector<bool> seen(n_, false);
    for (int s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::deque<int> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int w : adj_[u]) {
                if (!seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        result.push_back(std::move(comp));
    }
    return result;
}

SimpleGraph SimpleGraph::induced(const std::vector<int>& nodes) const {
    std::vector<int> index(n_, -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        int v = nodes[i];
        if (v < 0 || v >= n_)
            throw argument_error("node " + std::to_string(v) + " out of range");
        if (index[v] >= 0)
            throw argument_error("duplicate node " + std::to_string(v) +
                                 " in induced-subgraph node list");
        index[v] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : edges_) {
        if (index[u] >= 0 && index[v] >= 0)
            edges.emplace_back(index[u], index[v]);
    }
    return SimpleGraph(static_cast<int>(nodes.size()), std::move(edges));
}

SimpleGraph SimpleGraph::without_node(int v) const {
    return without_nodes({v});
}

SimpleGraph SimpleGraph::without_nodes(const std::vector<int>& vs) const {
    std::vector<bool> drop(n_, false);
    for (int v : vs) {
        if (v < 0 || v >= n_)
            throw argument_error("node " + std::to_string(v) + " out of range");
        drop[v] = true;
    }
    std::vector<int> keep;
    for (int v = 0; v < n_; ++v)
        if (!drop[v]) keep.push_back(v);
    return induced(keep);
}

SimpleGraph SimpleGraph::edgeless(int n) { return SimpleGraph(n, {}); }

SimpleGraph SimpleGraph::path(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::cycle(int n) {
    if (n < 3) throw argument_error("cycle needs at least 3 nodes");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, n - 1);
    return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::complete(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::star(int leaves) {
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return SimpleGraph(leaves + 1, std::move(edges));
}

SimpleGraph SimpleGraph::random_bounded_degree(int n, int max_deg, double p,
                                               std::uint64_t seed) {
    if (max_deg < 0 || p < 0.0 || p > 1.0)
        throw argument_error("random_bounded_degree: bad parameters");
    Rng rng(mix_seed(seed, "random_bounded_degree", n));
    std::vector<int> deg(n, 0);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            // Draw for every pair so the stream layout is fixed, then
            // reject edges that would violate the degree bound.
            bool want = rng.uniform() < p;
            if (want && deg[u] < max_deg && deg[v] < max_deg) {
                edges.emplace_back(u, v);
                ++deg[u];
                ++deg[v];
            }
        }
    }
    return SimpleGraph(n, std::move(edges));
}

namespace {

// Strips comments and blank lines; returns the next payload line.
bool next_payload_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto is_space = [](unsigned char c) { return std::isspace(c); };
        if (std::all_of(line.begin(), line.end(), is_space)) continue;
        return true;
    }
    return false;
}

}  // namespace

SimpleGraph SimpleGraph::parse(std::istream& in) {
    std::string line;
    if (!next_payload_line(in, line))
        throw argument_error("graph file: missing header");
    std::istringstream header(line);
    std::string tag;
    int n = -1;
    header >> tag >> n;
    if (tag != "graph" || n < 0 || header.fail())
        throw argument_error("graph file: expected 'graph <n>' header, got '" +
                             line + "'");
    std::vector<Edge> edges;
    while (next_payload_line(in, line)) {
        std::istringstream row(line);
        int u, v;
        row >> u >> v;
        std::string rest;
        if (row.fail() || (row >> rest))
            throw argument_error("graph file: bad edge line '" + line + "'");
        edges.emplace_back(u, v);
    }
    return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open graph file: " + path);
    return parse(in);
}

void SimpleGraph::save(std::ostream& out) const {
    out << "graph " << n_ << "\n";
    for (auto [u, v] : edges_) out << u << " " << v << "\n";
}

SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
    std::vector<Edge> edges = a.edges();
    int shift = a.node_count();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
    return SimpleGraph(a.node_count() + b.node_count(), std::move(edges));
}

SimpleGraph cartesian_product(const SimpleGraph& a, const SimpleGraph& b) {
    int nb = b.node_count();
    auto id = [nb](int i, int j) { return i * nb + j; };
    std::vector<Edge> edges;
    for (int i = 0; i < a.node_count(); ++i)
        for (auto [j, jj] : b.edges()) edges.emplace_back(id(i, j), id(i, jj));
    for (auto [i, ii] : a.edges())
        for (int j = 0; j < nb; ++j) edges.emplace_back(id(i, j), id(ii, j));
    return SimpleGraph(a.node_count() * nb, std::move(edges));
}

}  // namespace homexp
