#include "homexp/homcount.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "homexp/canon.hpp"
#include "homexp/enumeration.hpp"
#include "homexp/errors.hpp"
#include "homexp/invariants.hpp"

namespace homexp {

namespace detail {

bool power_fits(std::uint64_t base, int exponent, std::uint64_t cap) {
    if (cap == 0) return false;
    if (base <= 1) return 1 <= cap;
    std::uint64_t acc = 1;
    for (int i = 0; i < exponent; ++i) {
        if (acc > cap / base) return false;
        acc *= base;
    }
    return true;
}

namespace {

// Neighbors of each pattern node with smaller index; with nodes assigned in
// index order these are exactly the constraints checkable at each step.
std::vector<std::vector<int>> back_neighbors(const SimpleGraph& pattern) {
    std::vector<std::vector<int>> back(pattern.node_count());
    for (auto [u, v] : pattern.edges()) back[v].push_back(u);
    return back;
}

void hom_simple_rec(const std::vector<std::vector<int>>& back,
                    const SimpleGraph& target, int depth, std::vector<int>& img,
                    BigInt& out) {
    if (depth == static_cast<int>(back.size())) {
        ++out;
        return;
    }
    const int q = target.node_count();
    for (int i = 0; i < q; ++i) {
        bool ok = true;
        for (int u : back[depth])
            if (!target.has_edge(img[u], i)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        img[depth] = i;
        hom_simple_rec(back, target, depth + 1, img, out);
    }
}

template <typename T>
void hom_weighted_rec(const std::vector<std::vector<int>>& back,
                      const WeightedGraphT<T>& target, int depth,
                      std::vector<int>& img, const T& acc, T& out) {
    if (depth == static_cast<int>(back.size())) {
        out += acc;
        return;
    }
    const int q = target.node_count();
    for (int i = 0; i < q; ++i) {
        T w = acc * target.alpha(i);
        for (int u : back[depth]) w *= target.beta(img[u], i);
        if (w == T(0)) continue;
        img[depth] = i;
        hom_weighted_rec(back, target, depth + 1, img, w, out);
    }
}

}  // namespace

BigInt hom_brute_serial(const SimpleGraph& pattern, const SimpleGraph& target) {
    if (pattern.node_count() == 0) return 1;
    auto back = back_neighbors(pattern);
    std::vector<int> img(pattern.node_count(), 0);
    BigInt out = 0;
    hom_simple_rec(back, target, 0, img, out);
    return out;
}

BigInt hom_brute_parallel(const SimpleGraph& pattern,
                          const SimpleGraph& target) {
    if (pattern.node_count() == 0) return 1;
    const int q = target.node_count();
    auto back = back_neighbors(pattern);
    std::vector<BigInt> slot(q);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < q; ++i) {
        std::vector<int> img(pattern.node_count(), 0);
        img[0] = i;
        hom_simple_rec(back, target, 1, img, slot[i]);
    }
    BigInt out = 0;
    for (const BigInt& s : slot) out += s;
    return out;
}

template <typename T>
T hom_brute_serial(const SimpleGraph& pattern, const WeightedGraphT<T>& target) {
    if (pattern.node_count() == 0) return T(1);
    auto back = back_neighbors(pattern);
    std::vector<int> img(pattern.node_count(), 0);
    T out(0);
    hom_weighted_rec(back, target, 0, img, T(1), out);
    return out;
}

template <typename T>
T hom_brute_parallel(const SimpleGraph& pattern,
                     const WeightedGraphT<T>& target) {
    if (pattern.node_count() == 0) return T(1);
    const int q = target.node_count();
    auto back = back_neighbors(pattern);
    std::vector<T> slot(q, T(0));
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < q; ++i) {
        std::vector<int> img(pattern.node_count(), 0);
        img[0] = i;
        T w = target.alpha(i);
        hom_weighted_rec(back, target, 1, img, w, slot[i]);
    }
    // Fixed reduction order keeps float results independent of thread count.
    T out(0);
    for (const T& s : slot) out += s;
    return out;
}

template double hom_brute_serial<double>(const SimpleGraph&,
                                         const WeightedGraphT<double>&);
template Rational hom_brute_serial<Rational>(const SimpleGraph&,
                                             const WeightedGraphT<Rational>&);
template double hom_brute_parallel<double>(const SimpleGraph&,
                                           const WeightedGraphT<double>&);
template Rational hom_brute_parallel<Rational>(
    const SimpleGraph&, const WeightedGraphT<Rational>&);

}  // namespace detail

namespace {

template <typename T>
T int_pow(T base, std::uint64_t e) {
    T out(1);
    while (e--) out *= base;
    return out;
}

// ---------------------------------------------------------------------------
// Variable-elimination DP.  Factors hold tables over sorted pattern-node
// scopes, indexed little-endian (first scope node varies fastest).

template <typename T>
struct Factor {
    std::vector<int> scope;
    std::vector<T> table;
};

// Greedy minimum-degree elimination order on the pattern; eliminating a
// node connects its current neighbors (ties break to the smallest index so
// the order, and hence float rounding, is deterministic).
std::vector<int> elimination_order(const SimpleGraph& pattern) {
    const int n = pattern.node_count();
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : pattern.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> gone(n, 0);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!gone[v] && (best < 0 || adj[v].size() < adj[best].size()))
                best = v;
        order.push_back(best);
        gone[best] = 1;
        for (int a : adj[best]) adj[a].erase(best);
        for (int a : adj[best])
            for (int b : adj[best])
                if (a < b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
        adj[best].clear();
    }
    return order;
}

// Multiplies the factors touching `v`, sums `v` out, and returns the new
// factor; std::nullopt when an intermediate table would exceed `table_cap`.
template <typename T>
std::optional<Factor<T>> eliminate_node(std::vector<Factor<T>>& factors, int v,
                                        int q, std::uint64_t table_cap) {
    std::vector<Factor<T>> touched;
    std::vector<Factor<T>> rest;
    for (auto& f : factors) {
        if (std::binary_search(f.scope.begin(), f.scope.end(), v))
            touched.push_back(std::move(f));
        else
            rest.push_back(std::move(f));
    }
    std::vector<int> scope;
    for (const auto& f : touched)
        scope.insert(scope.end(), f.scope.begin(), f.scope.end());
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    if (!detail::power_fits(static_cast<std::uint64_t>(q),
                            static_cast<int>(scope.size()), table_cap))
        return std::nullopt;
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < scope.size(); ++i) size *= q;

    Factor<T> prod;
    prod.scope = scope;
    prod.table.assign(size, T(1));
    std::vector<int> coord(scope.size(), 0);
    for (const auto& f : touched) {
        // Positions of f's scope inside the product scope.
        std::vector<int> pos(f.scope.size());
        for (std::size_t k = 0; k < f.scope.size(); ++k)
            pos[k] = static_cast<int>(
                std::lower_bound(scope.begin(), scope.end(), f.scope[k]) -
                scope.begin());
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            std::uint64_t rem = idx;
            for (std::size_t k = 0; k < scope.size(); ++k) {
                coord[k] = static_cast<int>(rem % q);
                rem /= q;
            }
            std::uint64_t sub = 0;
            for (std::size_t k = f.scope.size(); k-- > 0;)
                sub = sub * q + coord[pos[k]];
            prod.table[idx] *= f.table[sub];
        }
    }

    const int p = static_cast<int>(
        std::lower_bound(scope.begin(), scope.end(), v) - scope.begin());
    std::uint64_t low_stride = 1;
    for (int k = 0; k < p; ++k) low_stride *= q;
    const std::uint64_t high_count = size / (low_stride * q);

    Factor<T> summed;
    summed.scope = scope;
    summed.scope.erase(summed.scope.begin() + p);
    summed.table.assign(size / q, T(0));
    for (std::uint64_t high = 0; high < high_count; ++high)
        for (int x = 0; x < q; ++x)
            for (std::uint64_t low = 0; low < low_stride; ++low)
                summed.table[high * low_stride + low] +=
                    prod.table[(high * q + x) * low_stride + low];
    factors = std::move(rest);
    return summed;
}

template <typename T>
std::optional<T> hom_elimination(const SimpleGraph& pattern,
                                 const WeightedGraphT<T>& target,
                                 std::uint64_t table_cap) {
    const int n = pattern.node_count();
    const int q = target.node_count();
    std::vector<Factor<T>> factors;
    factors.reserve(n + pattern.edge_count());
    for (int v = 0; v < n; ++v) {
        Factor<T> f;
        f.scope = {v};
        f.table.resize(q);
        for (int i = 0; i < q; ++i) f.table[i] = target.alpha(i);
        factors.push_back(std::move(f));
    }
    for (auto [u, v] : pattern.edges()) {
        Factor<T> f;
        f.scope = {u, v};
        f.table.resize(static_cast<std::size_t>(q) * q);
        for (int j = 0; j < q; ++j)
            for (int i = 0; i < q; ++i)
                f.table[static_cast<std::size_t>(j) * q + i] = target.beta(i, j);
        factors.push_back(std::move(f));
    }
    for (int v : elimination_order(pattern)) {
        auto next = eliminate_node(factors, v, q, table_cap);
        if (!next) return std::nullopt;
        factors.push_back(std::move(*next));
    }
    T out(1);
    for (const auto& f : factors) out *= f.table[0];
    return out;
}

// ---------------------------------------------------------------------------
// Random-cluster evaluation for two-level targets (uniform node weights,
// one diagonal and one off-diagonal edge weight):
//   hom(F,H) = a^n sum_{E' subset E} (diag-off)^{|E'|} off^{|E\E'|} q^{c(E')}
// where c(E') counts connected components of (V(F), E').

template <typename T>
std::optional<T> hom_random_cluster(const SimpleGraph& pattern,
                                    const WeightedGraphT<T>& target,
                                    std::uint64_t enum_cap) {
    const int q = target.node_count();
    if (q < 2) return std::nullopt;
    const T a = target.alpha(0);
    for (int i = 1; i < q; ++i)
        if (target.alpha(i) != a) return std::nullopt;
    const T diag = target.beta(0, 0);
    const T off = target.beta(0, 1);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (target.beta(i, j) != (i == j ? diag : off)) return std::nullopt;

    const auto& edges = pattern.edges();
    const int n = pattern.node_count();
    const int m = pattern.edge_count();
    if (m >= 63 || (std::uint64_t(1) << m) > enum_cap) return std::nullopt;

    const T delta = diag - off;
    std::vector<T> delta_pow(m + 1), off_pow(m + 1);
    std::vector<T> q_pow(n + 1);
    delta_pow[0] = off_pow[0] = T(1);
    for (int k = 1; k <= m; ++k) {
        delta_pow[k] = delta_pow[k - 1] * delta;
        off_pow[k] = off_pow[k - 1] * off;
    }
    q_pow[0] = T(1);
    for (int k = 1; k <= n; ++k) q_pow[k] = q_pow[k - 1] * T(q);

    std::vector<int> parent(n);
    T total(0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        if (delta == T(0) && mask != 0) continue;
        if (off == T(0) && mask + 1 != (std::uint64_t(1) << m)) continue;
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int comps = n;
        int picked = 0;
        for (int e = 0; e < m; ++e)
            if (mask >> e & 1) {
                ++picked;
                int ru = find(edges[e].first);
                int rv = find(edges[e].second);
                if (ru != rv) {
                    parent[ru] = rv;
                    --comps;
                }
            }
        total += delta_pow[picked] * off_pow[m - picked] * q_pow[comps];
    }
    return int_pow(a, n) * total;
}

std::string map_cap_message(int q, int n, std::uint64_t cap) {
    return "hom enumeration needs |V(H)|^|F| = " + std::to_string(q) + "^" +
           std::to_string(n) + " maps, over the map cap " + std::to_string(cap);
}

// Brute force is preferred below this many maps; above it the structured
// exact paths are tried first.
constexpr std::uint64_t kSmallBrute = 1u << 22;

}  // namespace

template <typename T>
T hom_count(const SimpleGraph& pattern, const WeightedGraphT<T>& target,
            const Budget& budget) {
    const int n = pattern.node_count();
    const int q = target.node_count();
    if (n == 0) return T(1);
    if (pattern.edge_count() == 0) return int_pow(target.alpha_total(), n);
    if (detail::power_fits(q, n, std::min<std::uint64_t>(kSmallBrute,
                                                         budget.map_cap)))
        return detail::hom_brute_parallel(pattern, target);
    if (auto dp = hom_elimination(pattern, target, budget.table_cap)) return *dp;
    if (auto rc = hom_random_cluster(pattern, target, budget.enum_cap))
        return *rc;
    if (detail::power_fits(q, n, budget.map_cap))
        return detail::hom_brute_parallel(pattern, target);
    throw resource_error(map_cap_message(q, n, budget.map_cap));
}

template double hom_count<double>(const SimpleGraph&,
                                  const WeightedGraphT<double>&, const Budget&);
template Rational hom_count<Rational>(const SimpleGraph&,
                                      const WeightedGraphT<Rational>&,
                                      const Budget&);

BigInt hom_count(const SimpleGraph& pattern, const SimpleGraph& target,
                 const Budget& budget) {
    const int n = pattern.node_count();
    const int q = target.node_count();
    if (n == 0) return 1;
    if (pattern.edge_count() == 0) return int_pow(BigInt(q), n);
    if (q == 0) return 0;
    if (detail::power_fits(q, n, budget.map_cap))
        return detail::hom_brute_parallel(pattern, target);
    auto weighted = RationalWeightedGraph::from_simple(target);
    if (auto dp = hom_elimination(pattern, weighted, budget.table_cap))
        return numerator(*dp);
    if (auto rc = hom_random_cluster(pattern, weighted, budget.enum_cap))
        return numerator(*rc);
    throw resource_error(map_cap_message(q, n, budget.map_cap));
}

namespace {

struct InjState {
    const SimpleGraph* pattern;
    const SimpleGraph* target;
    std::vector<std::vector<int>> back;  // smaller-index pattern neighbors
    std::vector<std::vector<int>> back_non;  // smaller-index non-neighbors
    bool induced = false;
};

void inj_rec(const InjState& st, int depth, std::vector<int>& img,
             std::vector<char>& used, BigInt& out) {
    if (depth == st.pattern->node_count()) {
        ++out;
        return;
    }
    const int q = st.target->node_count();
    for (int i = 0; i < q; ++i) {
        if (used[i]) continue;
        bool ok = true;
        for (int u : st.back[depth])
            if (!st.target->has_edge(img[u], i)) {
                ok = false;
                break;
            }
        if (ok && st.induced)
            for (int u : st.back_non[depth])
                if (st.target->has_edge(img[u], i)) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        img[depth] = i;
        used[i] = 1;
        inj_rec(st, depth + 1, img, used, out);
        used[i] = 0;
    }
}

BigInt injective_count(const SimpleGraph& pattern, const SimpleGraph& target,
                       bool induced) {
    if (pattern.node_count() > target.node_count()) return 0;
    InjState st;
    st.pattern = &pattern;
    st.target = &target;
    st.back.resize(pattern.node_count());
    st.back_non.resize(pattern.node_count());
    for (auto [u, v] : pattern.edges()) st.back[v].push_back(u);
    for (int v = 0; v < pattern.node_count(); ++v)
        for (int u = 0; u < v; ++u)
            if (!pattern.has_edge(u, v)) st.back_non[v].push_back(u);
    st.induced = induced;
    std::vector<int> img(pattern.node_count(), 0);
    std::vector<char> used(target.node_count(), 0);
    BigInt out = 0;
    inj_rec(st, 0, img, used, out);
    return out;
}

void surj_rec(const std::vector<std::vector<int>>& back,
              const SimpleGraph& pattern, const SimpleGraph& target, int depth,
              std::vector<int>& img, BigInt& out) {
    if (depth == pattern.node_count()) {
        std::vector<char> node_hit(target.node_count(), 0);
        for (int i : img) node_hit[i] = 1;
        if (std::find(node_hit.begin(), node_hit.end(), 0) != node_hit.end())
            return;
        std::set<Edge> edge_hit;
        for (auto [u, v] : pattern.edges()) {
            int a = img[u], b = img[v];
            edge_hit.insert({std::min(a, b), std::max(a, b)});
        }
        if (edge_hit.size() == target.edges().size()) ++out;
        return;
    }
    const int q = target.node_count();
    for (int i = 0; i < q; ++i) {
        bool ok = true;
        for (int u : back[depth])
            if (!target.has_edge(img[u], i)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        img[depth] = i;
        surj_rec(back, pattern, target, depth + 1, img, out);
    }
}

}  // namespace

HomCounts inj_ind_surj_aut(const SimpleGraph& pattern,
                           const SimpleGraph& target, const Budget& budget) {
    const int n = pattern.node_count();
    const int q = target.node_count();
    if (q > 0 && !detail::power_fits(q, n, budget.map_cap))
        throw resource_error(map_cap_message(q, n, budget.map_cap));
    HomCounts out;
    out.hom = hom_count(pattern, target, budget);
    out.inj = injective_count(pattern, target, false);
    out.ind = injective_count(pattern, target, true);
    out.aut = injective_count(pattern, pattern, false);
    if (n == 0) {
        out.surj = q == 0 ? 1 : 0;
    } else {
        auto back = detail::back_neighbors(pattern);
        std::vector<int> img(n, 0);
        surj_rec(back, pattern, target, 0, img, out.surj);
    }
    out.inj0 = Rational(out.inj) / Rational(out.aut);
    out.ind0 = Rational(out.ind) / Rational(out.aut);
    return out;
}

BigInt automorphism_count(const SimpleGraph& graph, const Budget& budget) {
    const int n = graph.node_count();
    if (n > 0 && !detail::power_fits(n, n, budget.map_cap))
        throw resource_error(map_cap_message(n, n, budget.map_cap));
    return injective_count(graph, graph, false);
}

template <typename T>
T density(const SimpleGraph& pattern, const WeightedGraphT<T>& target,
          const Budget& budget) {
    return hom_count(pattern, target, budget) /
           int_pow(target.alpha_total(), pattern.node_count());
}

template double density<double>(const SimpleGraph&,
                                const WeightedGraphT<double>&, const Budget&);
template Rational density<Rational>(const SimpleGraph&,
                                    const WeightedGraphT<Rational>&,
                                    const Budget&);

namespace {

// Shared memo for densities of spanning-subgraph types: members of
// CSpan(G) repeat isomorphism types heavily.
template <typename T>
class DensityMemo {
public:
    DensityMemo(const WeightedGraphT<T>& target, const Budget& budget)
        : target_(target), budget_(budget) {}

    const T& density_of(const SimpleGraph& f) {
        auto key = canonical_key(f);
        auto it = memo_.find(key);
        if (it == memo_.end())
            it = memo_.emplace(std::move(key), density(f, target_, budget_))
                     .first;
        return it->second;
    }

private:
    const WeightedGraphT<T>& target_;
    const Budget& budget_;
    std::map<std::string, T> memo_;
};

template <typename T>
T z_value_memo(const SimpleGraph& graph, DensityMemo<T>& memo,
               const Budget& budget) {
    if (graph.node_count() != 1 && !graph.connected())
        throw precondition_error("z(G,H) needs connected G");
    auto family = enumerate_family(graph, FamilyKind::CSpan,
                                   std::max(graph.node_count(), 1), budget);
    T out(0);
    for (const auto& member : family.members) {
        const T& t = memo.density_of(member.as_graph());
        if (member.edges.size() % 2 == 0)
            out += t;
        else
            out -= t;
    }
    return out;
}

}  // namespace

template <typename T>
T z_value(const SimpleGraph& graph, const WeightedGraphT<T>& target,
          const Budget& budget) {
    DensityMemo<T> memo(target, budget);
    return z_value_memo(graph, memo, budget);
}

template double z_value<double>(const SimpleGraph&,
                                const WeightedGraphT<double>&, const Budget&);
template Rational z_value<Rational>(const SimpleGraph&,
                                    const WeightedGraphT<Rational>&,
                                    const Budget&);

template <typename T>
bool z_inversion_check(const SimpleGraph& graph,
                       const WeightedGraphT<T>& target, const Budget& budget) {
    DensityMemo<T> density_memo(target, budget);
    std::map<std::string, T> z_memo;
    auto family = enumerate_family(graph, FamilyKind::CSpan,
                                   std::max(graph.node_count(), 1), budget);
    T sum(0);
    for (const auto& member : family.members) {
        SimpleGraph f = member.as_graph();
        auto key = canonical_key(f);
        auto it = z_memo.find(key);
        if (it == z_memo.end())
            it = z_memo
                     .emplace(std::move(key),
                              z_value_memo(f, density_memo, budget))
                     .first;
        if (member.edges.size() % 2 == 0)
            sum += it->second;
        else
            sum -= it->second;
    }
    T t = density(graph, target, budget);
    if constexpr (std::is_same_v<T, Rational>) {
        return sum == t;
    } else {
        double scale = std::max({std::abs(sum), std::abs(t), 1e-300});
        return std::abs(sum - t) <= 1e-9 * scale;
    }
}

template bool z_inversion_check<double>(const SimpleGraph&,
                                        const WeightedGraphT<double>&,
                                        const Budget&);
template bool z_inversion_check<Rational>(const SimpleGraph&,
                                          const WeightedGraphT<Rational>&,
                                          const Budget&);

GibbsWeight sample_random_map(const SimpleGraph& graph,
                              const WeightedGraph& target,
                              std::uint64_t seed) {
    Rng rng(seed);
    const int n = graph.node_count();
    GibbsWeight out;
    out.map.resize(n);
    for (int v = 0; v < n; ++v)
        out.map[v] = static_cast<int>(rng.weighted_index(target.alphas()));
    out.weight = 1.0;
    for (int v = 0; v < n; ++v) out.weight *= target.alpha(out.map[v]);
    for (auto [u, v] : graph.edges())
        out.weight *= target.beta(out.map[u], out.map[v]);
    return out;
}

WeightedGraph pushforward_weights(const SimpleGraph& graph,
                                  const WeightedGraph& target,
                                  const std::vector<int>& map) {
    const int n = graph.node_count();
    if (static_cast<int>(map.size()) != n)
        throw argument_error("pushforward map must assign every node of G");
    for (int i : map)
        if (i < 0 || i >= target.node_count())
            throw argument_error("pushforward map image out of range");
    std::vector<double> alpha(n, 1.0);
    std::vector<double> beta(static_cast<std::size_t>(n) * n, 0.0);
    for (auto [u, v] : graph.edges())
        beta[static_cast<std::size_t>(u) * n + v] =
            beta[static_cast<std::size_t>(v) * n + u] =
                target.beta(map[u], map[v]);
    return WeightedGraph(std::move(alpha), std::move(beta));
}

GibbsDistribution gibbs_distribution(const SimpleGraph& graph,
                                     const WeightedGraph& target,
                                     const Budget& budget) {
    const int n = graph.node_count();
    const int q = target.node_count();
    if (!detail::power_fits(q, n, budget.enum_cap))
        throw resource_error("gibbs table needs " + std::to_string(q) + "^" +
                             std::to_string(n) + " entries, over the " +
                             "enumeration cap " +
                             std::to_string(budget.enum_cap));
    GibbsDistribution out;
    std::vector<int> img(n, 0);
    while (true) {
        double w = 1.0;
        for (int v = 0; v < n; ++v) w *= target.alpha(img[v]);
        for (auto [u, v] : graph.edges()) w *= target.beta(img[u], img[v]);
        out.partition += w;
        out.entries.push_back({img, w});
        int v = 0;
        while (v < n && ++img[v] == q) img[v++] = 0;
        if (v == n) break;
    }
    if (!(out.partition > 0.0))
        throw precondition_error(
            "gibbs distribution is degenerate: hom(G,H) = 0");
    for (auto& entry : out.entries) entry.weight /= out.partition;
    return out;
}

}  // namespace homexp
