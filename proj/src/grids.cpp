#include "homexp/grids.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>

#include "homexp/errors.hpp"
#include "homexp/numeric.hpp"

namespace homexp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Power with overflow clamp for cap checks.
std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t cap) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (out > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
        out *= base;
    }
    return out;
}

// Weight of one column map under path (open) or cycle (closed) layering.
template <typename T>
T column_weight(const WeightedGraphT<T>& h, const std::vector<int>& map,
                bool closed) {
    T w(1);
    for (int v : map) w *= h.alpha(v);
    for (std::size_t j = 0; j + 1 < map.size(); ++j)
        w *= h.beta(map[j], map[j + 1]);
    if (closed && map.size() >= 2) w *= h.beta(map.back(), map.front());
    return w;
}

std::vector<int> decode_map(std::uint64_t index, int q, int m) {
    std::vector<int> map(m);
    for (int j = 0; j < m; ++j) {
        map[j] = static_cast<int>(index % q);
        index /= q;
    }
    return map;
}

// Multiplies the scaled column vector by the coupling tensor: the full
// transfer coupling factorizes over levels, so one pass per level with the
// q x q edge-weight matrix applies it without materializing the operator.
void apply_coupling(std::vector<double>& u, const WeightedGraph& h, int m) {
    const int q = h.node_count();
    std::vector<double> next(u.size());
    std::uint64_t stride = 1;
    for (int level = 0; level < m; ++level) {
        std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < u.size(); base += block)
            for (std::uint64_t inner = 0; inner < stride; ++inner) {
                for (int a = 0; a < q; ++a) {
                    double sum = 0.0;
                    for (int b = 0; b < q; ++b)
                        sum += h.beta(a, b) * u[base + inner + b * stride];
                    next[base + inner + a * stride] = sum;
                }
            }
        u.swap(next);
        stride = block;
    }
}

// Rescales to unit maximum; returns false when the vector vanished.
bool renormalize(std::vector<double>& u, double& ln_scale) {
    double top = 0.0;
    for (double x : u) top = std::max(top, std::fabs(x));
    if (top == 0.0) return false;
    for (double& x : u) x /= top;
    ln_scale += std::log(top);
    return true;
}

struct ScaledMatrix {
    std::vector<double> entries;  // row-major t x t
    int t = 0;
    double ln_scale = 0.0;

    bool renormalize() {
        double top = 0.0;
        for (double x : entries) top = std::max(top, std::fabs(x));
        if (top == 0.0) return false;
        for (double& x : entries) x /= top;
        ln_scale += std::log(top);
        return true;
    }
};

ScaledMatrix multiply(const ScaledMatrix& a, const ScaledMatrix& b) {
    ScaledMatrix out;
    out.t = a.t;
    out.ln_scale = a.ln_scale + b.ln_scale;
    out.entries.assign(static_cast<std::size_t>(a.t) * a.t, 0.0);
    for (int i = 0; i < a.t; ++i)
        for (int k = 0; k < a.t; ++k) {
            double aik = a.entries[i * a.t + k];
            if (aik == 0.0) continue;
            const double* brow = &b.entries[k * a.t];
            double* orow = &out.entries[i * a.t];
            for (int j = 0; j < a.t; ++j) orow[j] += aik * brow[j];
        }
    return out;
}

// ln tr(M^n) for the scaled nonnegative matrix M, by repeated squaring.
double ln_trace_power(ScaledMatrix m, int n) {
    if (!m.renormalize()) return kNegInf;
    ScaledMatrix result;
    result.t = m.t;
    result.entries.assign(static_cast<std::size_t>(m.t) * m.t, 0.0);
    for (int i = 0; i < m.t; ++i) result.entries[i * m.t + i] = 1.0;
    bool accumulated = false;
    int e = n;
    while (e > 0) {
        if (e & 1) {
            result = multiply(result, m);
            if (!result.renormalize()) return kNegInf;
            accumulated = true;
        }
        e >>= 1;
        if (e > 0) {
            m = multiply(m, m);
            if (!m.renormalize()) return kNegInf;
        }
    }
    (void)accumulated;
    double trace = 0.0;
    for (int i = 0; i < result.t; ++i) trace += result.entries[i * result.t + i];
    if (trace == 0.0) return kNegInf;
    return std::log(trace) + result.ln_scale;
}

void check_grid_arguments(GridKind kind, int n, int m) {
    if (n < 1 || m < 1)
        throw argument_error("grid dimensions must be positive");
    if ((kind == GridKind::CyclePath || kind == GridKind::CycleCycle) &&
        n < 3)
        throw argument_error("cycle factors need length >= 3, got " +
                             std::to_string(n));
    if (kind == GridKind::CycleCycle && m < 3)
        throw argument_error("cycle factors need length >= 3, got " +
                             std::to_string(m));
}

}  // namespace

GridKind grid_kind_from_name(const std::string& name) {
    if (name == "grid") return GridKind::PathPath;
    if (name == "cylinder") return GridKind::CyclePath;
    if (name == "torus") return GridKind::CycleCycle;
    throw argument_error("unknown grid kind '" + name +
                         "' (expected grid, cylinder, or torus)");
}

std::string grid_kind_name(GridKind kind) {
    switch (kind) {
        case GridKind::PathPath: return "grid";
        case GridKind::CyclePath: return "cylinder";
        case GridKind::CycleCycle: return "torus";
    }
    throw argument_error("unknown grid kind");
}

SimpleGraph make_grid(GridKind kind, int n, int m) {
    check_grid_arguments(kind, n, m);
    auto id = [m](int i, int j) { return i * m + j; };
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            if (i + 1 < n) edges.push_back({id(i, j), id(i + 1, j)});
            if (j + 1 < m) edges.push_back({id(i, j), id(i, j + 1)});
        }
    if (kind != GridKind::PathPath)
        for (int j = 0; j < m; ++j)
            edges.push_back({id(0, j), id(n - 1, j)});
    if (kind == GridKind::CycleCycle)
        for (int i = 0; i < n; ++i)
            edges.push_back({id(i, 0), id(i, m - 1)});
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    return SimpleGraph(n * m, std::move(edges));
}

template <typename T>
TransferGraphT<T> transfer_graph(const WeightedGraphT<T>& h, int m,
                                 const Budget& budget) {
    if (m < 1) throw argument_error("transfer graph needs m >= 1");
    const int q = h.node_count();
    if (q < 1) throw argument_error("transfer graph needs a nonempty target");
    std::uint64_t total =
        checked_power(static_cast<std::uint64_t>(q), m, budget.transfer_cap);
    if (total > budget.transfer_cap)
        throw resource_error("transfer graph needs " + std::to_string(q) +
                             "^" + std::to_string(m) +
                             " column maps, over the cap " +
                             std::to_string(budget.transfer_cap));
    std::vector<std::vector<int>> maps;
    std::vector<T> alpha;
    for (std::uint64_t index = 0; index < total; ++index) {
        auto map = decode_map(index, q, m);
        T w = column_weight(h, map, false);
        if (w == T(0)) continue;
        maps.push_back(std::move(map));
        alpha.push_back(std::move(w));
    }
    const std::size_t t = maps.size();
    if (t * t > budget.table_cap)
        throw resource_error(
            "transfer graph coupling table needs " + std::to_string(t * t) +
            " entries, over the cap " + std::to_string(budget.table_cap));
    std::vector<T> beta(t * t, T(0));
    for (std::size_t u = 0; u < t; ++u)
        for (std::size_t v = u; v < t; ++v) {
            T w(1);
            for (int j = 0; j < m; ++j) w *= h.beta(maps[u][j], maps[v][j]);
            beta[u * t + v] = w;
            beta[v * t + u] = std::move(w);
        }
    return TransferGraphT<T>{
        WeightedGraphT<T>(std::move(alpha), std::move(beta)),
        std::move(maps), m};
}

template TransferGraphT<double> transfer_graph<double>(
    const WeightedGraphT<double>&, int, const Budget&);
template TransferGraphT<Rational> transfer_graph<Rational>(
    const WeightedGraphT<Rational>&, int, const Budget&);

double grid_ln_hom(GridKind kind, int n, int m, const WeightedGraph& h,
                   const Budget& budget) {
    check_grid_arguments(kind, n, m);
    const int q = h.node_count();
    if (q < 1) throw argument_error("grid partition needs a nonempty target");
    std::uint64_t total =
        checked_power(static_cast<std::uint64_t>(q), m, budget.transfer_cap);
    if (total > budget.transfer_cap)
        throw resource_error("grid column space needs " + std::to_string(q) +
                             "^" + std::to_string(m) +
                             " states, over the cap " +
                             std::to_string(budget.transfer_cap));
    const double nodes = static_cast<double>(n) * m;
    const bool closed_column = kind == GridKind::CycleCycle;
    std::vector<double> alpha(total);
    for (std::uint64_t index = 0; index < total; ++index)
        alpha[index] =
            column_weight(h, decode_map(index, q, m), closed_column);

    if (kind == GridKind::PathPath) {
        // Matrix-free chain: the coupling acts level by level.
        std::vector<double> u = alpha;
        double ln_scale = 0.0;
        if (!renormalize(u, ln_scale)) return kNegInf;
        for (int step = 1; step < n; ++step) {
            apply_coupling(u, h, m);
            for (std::uint64_t i = 0; i < total; ++i) u[i] *= alpha[i];
            if (!renormalize(u, ln_scale)) return kNegInf;
        }
        double sum = 0.0;
        for (double x : u) sum += x;
        if (sum == 0.0) return kNegInf;
        return (std::log(sum) + ln_scale) / nodes;
    }

    // Cyclic chain: trace of the n-th power of the dense transfer operator
    // restricted to positive-weight columns.
    std::vector<std::uint64_t> support;
    for (std::uint64_t i = 0; i < total; ++i)
        if (alpha[i] != 0.0) support.push_back(i);
    const std::size_t t = support.size();
    if (t == 0) return kNegInf;
    if (t * t > budget.table_cap)
        throw resource_error(
            "grid transfer operator needs " + std::to_string(t * t) +
            " entries, over the cap " + std::to_string(budget.table_cap));
    ScaledMatrix matrix;
    matrix.t = static_cast<int>(t);
    matrix.entries.assign(t * t, 0.0);
    std::vector<std::vector<int>> maps(t);
    for (std::size_t i = 0; i < t; ++i) maps[i] = decode_map(support[i], q, m);
    for (std::size_t u = 0; u < t; ++u)
        for (std::size_t v = 0; v < t; ++v) {
            double w = alpha[support[u]];
            for (int j = 0; j < m && w != 0.0; ++j)
                w *= h.beta(maps[u][j], maps[v][j]);
            matrix.entries[u * t + v] = w;
        }
    double ln_hom = ln_trace_power(std::move(matrix), n);
    return std::isinf(ln_hom) ? ln_hom : ln_hom / nodes;
}

GridConvergenceTable convergence_experiment(
    GridKind kind, const WeightedGraph& h,
    const std::vector<std::pair<int, int>>& sizes, const Budget& budget) {
    GridConvergenceTable out;
    bool odd_cycle_length = false;
    for (auto [n, m] : sizes) {
        if (kind != GridKind::PathPath && n % 2 == 1) odd_cycle_length = true;
        if (kind == GridKind::CycleCycle && m % 2 == 1)
            odd_cycle_length = true;
        GridConvergenceRow row;
        row.n = n;
        row.m = m;
        row.value = grid_ln_hom(kind, n, m, h, budget);
        row.delta = out.rows.empty() ? 0.0 : row.value - out.rows.back().value;
        out.rows.push_back(row);
    }
    if (odd_cycle_length && has_bipartite_support_component(h))
        out.warning =
            "odd cycle lengths need a connected non-bipartite target: "
            "the support of H has a bipartite component";
    return out;
}

bool has_bipartite_support_component(const WeightedGraph& h) {
    const int q = h.node_count();
    std::vector<int> color(q, -1);
    for (int start = 0; start < q; ++start) {
        if (color[start] >= 0) continue;
        // BFS 2-coloring of this support component.
        bool bipartite = true;
        color[start] = 0;
        std::deque<int> queue{start};
        std::vector<int> component{start};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            if (h.beta(u, u) > 0.0) bipartite = false;  // loop: odd walk
            for (int v = 0; v < q; ++v) {
                if (v == u || !(h.beta(u, v) > 0.0)) continue;
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    component.push_back(v);
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    bipartite = false;
                }
            }
        }
        if (bipartite) return true;
    }
    return false;
}

}  // namespace homexp
