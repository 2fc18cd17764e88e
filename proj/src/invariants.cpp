#include "homexp/invariants.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "homexp/canon.hpp"
#include "homexp/errors.hpp"

namespace homexp {

namespace {

using Poly = std::vector<Rational>;  // coefficient i multiplies y^i

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

// (y + c)^k
Poly shifted_power(const Rational& c, int k) {
    Poly out{Rational(1)};
    Poly base{c, Rational(1)};
    for (int i = 0; i < k; ++i) out = poly_mul(out, base);
    return out;
}

bool is_tree(const SimpleGraph& g) {
    return g.connected() && g.edge_count() == g.node_count() - 1;
}

bool is_cycle(const SimpleGraph& g) {
    if (g.node_count() < 3 || !g.connected()) return false;
    for (int v = 0; v < g.node_count(); ++v)
        if (g.degree(v) != 2) return false;
    return true;
}

bool is_complete(const SimpleGraph& g) {
    long long n = g.node_count();
    return g.edge_count() == n * (n - 1) / 2;
}

// Simple contraction of (u,v): v merges into u, parallel edges collapse.
SimpleGraph contract_simple(const SimpleGraph& g, int u, int v) {
    int n = g.node_count();
    std::vector<int> relabel(n);
    int next = 0;
    for (int w = 0; w < n; ++w) relabel[w] = (w == v) ? -1 : next++;
    relabel[v] = relabel[u];
    std::vector<Edge> edges;
    for (auto [a, b] : g.edges()) {
        int x = relabel[a], y = relabel[b];
        if (x != y) edges.emplace_back(x, y);
    }
    return SimpleGraph(n - 1, std::move(edges));
}

constexpr int kMemoMaxNodes = 8;

Poly chrom_rec(const SimpleGraph& g, std::map<std::string, Poly>& memo);

Poly chrom_components(const SimpleGraph& g,
                      std::map<std::string, Poly>& memo) {
    Poly out{Rational(1)};
    for (const auto& comp : g.components())
        out = poly_mul(out, chrom_rec(g.induced(comp), memo));
    return out;
}

Poly chrom_rec(const SimpleGraph& g, std::map<std::string, Poly>& memo) {
    int n = g.node_count();
    if (g.edge_count() == 0) {
        Poly out(n + 1, Rational(0));
        out[n] = 1;
        return out;
    }
    if (!g.connected()) return chrom_components(g, memo);
    if (is_tree(g)) {
        Poly out = shifted_power(Rational(-1), n - 1);
        out.insert(out.begin(), Rational(0));  // multiply by y
        return out;
    }
    if (is_complete(g)) {
        Poly out{Rational(1)};
        for (int i = 0; i < n; ++i)
            out = poly_mul(out, Poly{Rational(-i), Rational(1)});
        return out;
    }
    if (is_cycle(g)) {
        Poly out = shifted_power(Rational(-1), n);
        Poly tail{Rational(-1), Rational(1)};  // y - 1
        if (n % 2 == 0) {
            if (out.size() < 2) out.resize(2, Rational(0));
            out[0] += tail[0];
            out[1] += tail[1];
        } else {
            out = poly_sub(out, tail);
        }
        return out;
    }

    std::string key;
    if (n <= kMemoMaxNodes) {
        key = canonical_key(g);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    auto [u, v] = g.edges().front();
    SimpleGraph deleted(n, [&] {
        std::vector<Edge> edges(g.edges().begin() + 1, g.edges().end());
        return edges;
    }());
    Poly result = poly_sub(chrom_rec(deleted, memo),
                           chrom_rec(contract_simple(g, u, v), memo));
    if (!key.empty()) memo[key] = result;
    return result;
}

}  // namespace

Rational ChromaticPolynomial::evaluate(const Rational& y) const {
    Rational value(0);
    for (std::size_t i = coefficients.size(); i-- > 0;)
        value = value * y + coefficients[i];
    return value;
}

ChromaticPolynomial chromatic_polynomial(const SimpleGraph& g) {
    std::map<std::string, Poly> memo;
    Poly p = chrom_rec(g, memo);
    p.resize(g.node_count() + 1, Rational(0));
    return {std::move(p)};
}

BigInt surjective_colorings(const SimpleGraph& g, int k) {
    if (k < 0) throw argument_error("color count must be >= 0");
    auto chrom = chromatic_polynomial(g);
    Rational total(0);
    for (int j = 0; j <= k; ++j) {
        Rational term = Rational(binomial(k, j)) * chrom.evaluate(Rational(j));
        total += ((k - j) % 2 == 0) ? term : -term;
    }
    if (boost::multiprecision::denominator(total) != 1)
        throw error("surjective_colorings: non-integer result");
    return boost::multiprecision::numerator(total);
}

namespace {

BigInt negpow(int k) { return k % 2 == 0 ? BigInt(1) : BigInt(-1); }

BigInt crapo_rec(const SimpleGraph& g, std::map<std::string, BigInt>& memo) {
    int n = g.node_count();
    if (n == 1) return 1;
    if (!g.connected()) return 0;
    if (is_tree(g)) return negpow(n - 1);
    if (is_cycle(g)) return negpow(n - 1) * (n - 1);
    if (is_complete(g)) {
        BigInt f = 1;
        for (int i = 2; i < n; ++i) f *= i;
        return negpow(n - 1) * f;
    }
    std::string key;
    if (n <= kMemoMaxNodes) {
        key = canonical_key(g);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    auto [u, v] = g.edges().front();
    SimpleGraph deleted(n, [&] {
        std::vector<Edge> edges(g.edges().begin() + 1, g.edges().end());
        return edges;
    }());
    BigInt result = crapo_rec(deleted, memo) -
                    crapo_rec(contract_simple(g, u, v), memo);
    if (!key.empty()) memo[key] = result;
    return result;
}

}  // namespace

BigInt crapo_invariant(const SimpleGraph& g) {
    if (g.node_count() == 0) throw argument_error("empty graph");
    std::map<std::string, BigInt> memo;
    return crapo_rec(g, memo);
}

namespace {

template <typename T>
void check_edge(const WeightedGraphT<T>& h, int u, int v) {
    if (u < 0 || v < 0 || u >= h.node_count() || v >= h.node_count() ||
        u == v)
        throw argument_error("invalid edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
    if (h.beta(u, v) == T(0))
        throw argument_error("edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ") has zero weight");
}

// Shared contraction machinery; `combine` merges the two parallel
// pre-images of an edge at the merged node.
template <typename T, typename Combine>
WeightedGraphT<T> contract_with(const WeightedGraphT<T>& h, int u, int v,
                                Combine&& combine) {
    check_edge(h, u, v);
    if (u > v) std::swap(u, v);
    int q = h.node_count();
    std::vector<int> keep;
    for (int w = 0; w < q; ++w)
        if (w != v) keep.push_back(w);
    std::vector<T> alpha;
    alpha.reserve(keep.size());
    for (int w : keep) alpha.push_back(h.alpha(w));
    alpha[u] = h.alpha(u) + h.alpha(v);  // u keeps its index: all kept w<v shift by 0
    std::vector<T> beta(keep.size() * keep.size(), T(0));
    auto at = [&](int i, int j) -> T& {
        return beta[i * static_cast<int>(keep.size()) + j];
    };
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            at(static_cast<int>(i), static_cast<int>(j)) =
                h.beta(keep[i], keep[j]);
    // Merge v's incidences into u's.
    for (std::size_t j = 0; j < keep.size(); ++j) {
        int w = keep[j];
        T merged = combine(h.beta(u, w == u ? u : w), h.beta(v, w == u ? v : w));
        at(u, static_cast<int>(j)) = merged;
        at(static_cast<int>(j), u) = merged;
    }
    return WeightedGraphT<T>(std::move(alpha), std::move(beta));
}

}  // namespace

template <typename T>
WeightedGraphT<T> contract_sum(const WeightedGraphT<T>& h, int u, int v) {
    return contract_with(h, u, v, [](const T& a, const T& b) { return a + b; });
}

template <typename T>
WeightedGraphT<T> contract_sum_minus_product(const WeightedGraphT<T>& h,
                                             int u, int v) {
    return contract_with(h, u, v,
                         [](const T& a, const T& b) { return a + b - a * b; });
}

template <typename T>
WeightedGraphT<T> delete_edge(const WeightedGraphT<T>& h, int u, int v) {
    check_edge(h, u, v);
    int q = h.node_count();
    std::vector<T> alpha = h.alphas();
    std::vector<T> beta;
    beta.reserve(static_cast<std::size_t>(q) * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) beta.push_back(h.beta(i, j));
    beta[u * q + v] = beta[v * q + u] = T(0);
    return WeightedGraphT<T>(std::move(alpha), std::move(beta));
}

namespace {

// Off-diagonal nonzero-weight support as a simple graph.
template <typename T>
SimpleGraph support_graph(const WeightedGraphT<T>& h) {
    std::vector<Edge> edges;
    for (int i = 0; i < h.node_count(); ++i)
        for (int j = i + 1; j < h.node_count(); ++j)
            if (h.beta(i, j) != T(0)) edges.emplace_back(i, j);
    return SimpleGraph(h.node_count(), std::move(edges));
}

template <typename T>
T weighted_crapo_rec(const WeightedGraphT<T>& h, std::uint64_t& steps,
                     std::uint64_t cap) {
    if (++steps > cap)
        throw resource_error(
            "enumeration cap: weighted Crapo recursion exceeded " +
            std::to_string(cap) + " steps");
    SimpleGraph support = support_graph(h);
    if (h.node_count() == 1) return T(1);
    if (!support.connected()) return T(0);
    auto [u, v] = support.edges().front();
    T beta = h.beta(u, v);
    return weighted_crapo_rec(delete_edge(h, u, v), steps, cap) -
           beta * weighted_crapo_rec(contract_sum_minus_product(h, u, v),
                                     steps, cap);
}

}  // namespace

template <typename T>
T weighted_crapo(const WeightedGraphT<T>& h, const Budget& budget) {
    std::uint64_t steps = 0;
    return weighted_crapo_rec(h, steps, budget.enum_cap);
}

template <typename T>
T weighted_tree_sum(const WeightedGraphT<T>& h, const Budget& budget) {
    SimpleGraph support = support_graph(h);
    if (!support.connected()) return T(0);
    int n = h.node_count();
    if (n == 1) return T(1);
    if constexpr (std::is_same_v<T, Rational>) {
        // Exact mode enumerates spanning trees of the support.
        if (support.edge_count() > 12)
            throw resource_error(
                "enumeration cap: exact tree sum supports at most 12 edges");
        (void)budget;
        T total(0);
        int m = support.edge_count();
        for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
            if (__builtin_popcountll(mask) != n - 1) continue;
            std::vector<Edge> edges;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) edges.push_back(support.edges()[i]);
            if (!SimpleGraph(n, edges).connected()) continue;
            T prod(1);
            for (auto [u, v] : edges) prod *= h.beta(u, v);
            total += prod;
        }
        return total;
    } else {
        // Weighted matrix-tree theorem on the reduced Laplacian.
        int m = n - 1;
        std::vector<std::vector<T>> a(m, std::vector<T>(m, T(0)));
        for (int i = 1; i < n; ++i) {
            T row(0);
            for (int j = 0; j < n; ++j)
                if (j != i) row += h.beta(i, j);
            a[i - 1][i - 1] = row;
            for (int j = 1; j < n; ++j)
                if (j != i) a[i - 1][j - 1] -= h.beta(i, j);
        }
        // LU with partial pivoting; determinant = signed pivot product.
        T det(1);
        for (int k = 0; k < m; ++k) {
            int pivot = k;
            for (int r = k + 1; r < m; ++r)
                if (std::abs(a[r][k]) > std::abs(a[pivot][k])) pivot = r;
            if (a[pivot][k] == T(0)) return T(0);
            if (pivot != k) {
                std::swap(a[pivot], a[k]);
                det = -det;
            }
            det *= a[k][k];
            for (int r = k + 1; r < m; ++r) {
                T factor = a[r][k] / a[k][k];
                for (int c = k; c < m; ++c) a[r][c] -= factor * a[k][c];
            }
        }
        return det;
    }
}

template WeightedGraphT<double> contract_sum(const WeightedGraphT<double>&,
                                             int, int);
template WeightedGraphT<Rational> contract_sum(const WeightedGraphT<Rational>&,
                                               int, int);
template WeightedGraphT<double> contract_sum_minus_product(
    const WeightedGraphT<double>&, int, int);
template WeightedGraphT<Rational> contract_sum_minus_product(
    const WeightedGraphT<Rational>&, int, int);
template WeightedGraphT<double> delete_edge(const WeightedGraphT<double>&, int,
                                            int);
template WeightedGraphT<Rational> delete_edge(const WeightedGraphT<Rational>&,
                                              int, int);
template double weighted_crapo(const WeightedGraphT<double>&, const Budget&);
template Rational weighted_crapo(const WeightedGraphT<Rational>&,
                                 const Budget&);
template double weighted_tree_sum(const WeightedGraphT<double>&,
                                  const Budget&);
template Rational weighted_tree_sum(const WeightedGraphT<Rational>&,
                                    const Budget&);

}  // namespace homexp
