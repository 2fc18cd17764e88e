#include "homexp/polymer.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "homexp/canon.hpp"
#include "homexp/errors.hpp"
#include "homexp/homcount.hpp"

namespace homexp {

namespace {

template <typename T>
void stab_rec(const SimpleGraph& g, const std::vector<T>& x, int i,
              std::vector<int>& blocked, const T& acc, T& out,
              std::uint64_t& steps, std::uint64_t cap) {
    if (++steps > cap)
        throw resource_error("independent-set enumeration exceeds cap " +
                             std::to_string(cap));
    if (i == g.node_count()) {
        out += acc;
        return;
    }
    stab_rec(g, x, i + 1, blocked, acc, out, steps, cap);
    if (blocked[i] == 0) {
        for (int j : g.neighbors(i)) ++blocked[j];
        T next = acc * x[i];
        stab_rec(g, x, i + 1, blocked, next, out, steps, cap);
        for (int j : g.neighbors(i)) --blocked[j];
    }
}

}  // namespace

template <typename T>
T stab_polynomial(const SimpleGraph& g, const std::vector<T>& x,
                  const Budget& budget) {
    if (static_cast<int>(x.size()) != g.node_count())
        throw argument_error("stab: activity vector must match node count");
    std::vector<int> blocked(g.node_count(), 0);
    T out(0);
    std::uint64_t steps = 0;
    stab_rec(g, x, 0, blocked, T(1), out, steps, budget.enum_cap);
    return out;
}

template double stab_polynomial<double>(const SimpleGraph&,
                                        const std::vector<double>&,
                                        const Budget&);
template Rational stab_polynomial<Rational>(const SimpleGraph&,
                                            const std::vector<Rational>&,
                                            const Budget&);

BigInt sequence_crapo(const SimpleGraph& g, const std::vector<int>& nodes,
                      const std::vector<int>& multiplicities) {
    const int s = static_cast<int>(nodes.size());
    if (s == 0 || multiplicities.size() != nodes.size())
        throw argument_error("sequence_crapo: support/multiplicity mismatch");
    if (s > 63) throw resource_error("sequence_crapo: support too large");
    int order = 0;
    for (int a : multiplicities) {
        if (a < 1) throw argument_error("sequence_crapo: multiplicity < 1");
        order += a;
    }
    // Precompute neighbor masks within the support (distinct copies of the
    // same node are adjacent, handled by the "one copy per block" rule).
    std::vector<std::uint64_t> nbr(s, 0);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            if (i != j && g.has_edge(nodes[i], nodes[j]))
                nbr[i] |= std::uint64_t(1) << j;

    // States: remaining multiplicity vectors, mixed-radix indexed.
    std::vector<std::uint64_t> stride(s, 1);
    std::uint64_t state_count = 1;
    for (int i = 0; i < s; ++i) {
        stride[i] = state_count;
        state_count *= multiplicities[i] + 1;
    }
    // partitions[state][k]: number of ways to partition the remaining
    // copies into k blocks, each block holding at most one copy of each
    // support node over an independent support set.
    std::vector<std::vector<BigInt>> partitions(state_count);
    partitions[0] = {BigInt(1)};

    std::vector<int> b(s, 0);
    // Iterate states in increasing mixed-radix index; every predecessor
    // b - 1_T has a smaller index, so a single sweep fills the table.
    for (std::uint64_t idx = 1; idx < state_count; ++idx) {
        std::uint64_t rem = idx;
        int first = -1;
        std::uint64_t active = 0;
        for (int i = 0; i < s; ++i) {
            b[i] = static_cast<int>(rem % (multiplicities[i] + 1));
            rem /= multiplicities[i] + 1;
            if (b[i] > 0) {
                active |= std::uint64_t(1) << i;
                if (first < 0) first = i;
            }
        }
        auto& here = partitions[idx];
        here.assign(order + 1, BigInt(0));
        // Enumerate independent support sets T containing `first` using
        // only active nodes; assign one copy of each member to the block.
        std::uint64_t allowed = active & ~nbr[first] &
                                ~((std::uint64_t(1) << (first + 1)) - 1);
        // DFS over subsets of `allowed` that stay pairwise non-adjacent.
        struct Item {
            std::uint64_t chosen, candidates;
            BigInt weight;
        };
        std::vector<Item> stack;
        stack.push_back({std::uint64_t(1) << first, allowed, BigInt(1)});
        while (!stack.empty()) {
            Item item = std::move(stack.back());
            stack.pop_back();
            // Close the block as-is.
            std::uint64_t prev_idx = idx;
            std::uint64_t t = item.chosen;
            while (t) {
                int i = __builtin_ctzll(t);
                t &= t - 1;
                prev_idx -= stride[i];
            }
            const auto& prev = partitions[prev_idx];
            for (std::size_t k = 0; k + 1 <= static_cast<std::size_t>(order) &&
                                    k < prev.size();
                 ++k)
                if (prev[k] != 0) here[k + 1] += item.weight * prev[k];
            // Or extend it with a further active, compatible node.
            std::uint64_t cand = item.candidates;
            while (cand) {
                int j = __builtin_ctzll(cand);
                cand &= cand - 1;
                std::uint64_t rest =
                    item.candidates & ~nbr[j] &
                    ~((std::uint64_t(1) << (j + 1)) - 1);
                stack.push_back({item.chosen | (std::uint64_t(1) << j), rest,
                                 item.weight * b[j]});
            }
        }
    }

    const auto& full = partitions[state_count - 1];
    BigInt cr = 0;
    BigInt factorial = 1;  // (k-1)! running
    for (int k = 1; k <= order && k < static_cast<int>(full.size()); ++k) {
        if (k > 1) factorial *= k - 1;
        if (k % 2 == 1)
            cr += full[k] * factorial;
        else
            cr -= full[k] * factorial;
    }
    return cr;
}

namespace {

void compositions(int remaining_slots, int budget_left,
                  std::vector<int>& current,
                  const std::function<void(const std::vector<int>&)>& emit) {
    if (remaining_slots == 0) {
        emit(current);
        return;
    }
    // Each slot needs at least 1 and must leave room for the rest.
    for (int a = 1; a + (remaining_slots - 1) <= budget_left; ++a) {
        current.push_back(a);
        compositions(remaining_slots - 1, budget_left - a, current, emit);
        current.pop_back();
    }
}

}  // namespace

std::vector<MayerTerm> mayer_terms(const SimpleGraph& g,
                                   const std::vector<double>& x, int m_max,
                                   const Budget& budget) {
    if (static_cast<int>(x.size()) != g.node_count())
        throw argument_error("mayer: activity vector must match node count");
    if (m_max < 1) throw precondition_error("mayer: m_max must be >= 1");
    std::vector<MayerTerm> out;
    std::map<std::string, BigInt> cr_memo;
    std::uint64_t emitted = 0;
    auto visit = [&](const std::vector<int>& subset) {
        const int s = static_cast<int>(subset.size());
        std::vector<int> mult;
        compositions(s, m_max, mult, [&](const std::vector<int>& a) {
            if (++emitted > budget.enum_cap)
                throw resource_error("mayer term enumeration exceeds cap " +
                                     std::to_string(budget.enum_cap));
            MayerTerm term;
            term.nodes = subset;
            term.multiplicities = a;
            for (int ai : a) term.order += ai;
            // Memoize cr on the canonical form of the materialized
            // sequence graph; types repeat across supports.
            int total = term.order;
            std::vector<Edge> edges;
            std::vector<int> offset(s, 0);
            for (int i = 0, acc = 0; i < s; ++i) {
                offset[i] = acc;
                acc += a[i];
            }
            for (int i = 0; i < s; ++i)
                for (int j = i; j < s; ++j) {
                    bool linked =
                        (i == j) || g.has_edge(subset[i], subset[j]);
                    if (!linked) continue;
                    for (int p = 0; p < a[i]; ++p)
                        for (int q = (i == j ? p + 1 : 0); q < a[j]; ++q)
                            edges.push_back({offset[i] + p, offset[j] + q});
                }
            SimpleGraph seq(total, std::move(edges));
            auto key = canonical_key(seq);
            auto it = cr_memo.find(key);
            if (it == cr_memo.end())
                it = cr_memo
                         .emplace(std::move(key),
                                  sequence_crapo(g, subset, a))
                         .first;
            term.coefficient = it->second;
            if (term.coefficient == 0) return;
            double weight = static_cast<double>(term.coefficient);
            for (int i = 0; i < s; ++i) {
                for (int p = 0; p < a[i]; ++p) weight *= x[subset[i]];
                for (int p = 2; p <= a[i]; ++p) weight /= p;
            }
            term.contribution = weight;
            out.push_back(std::move(term));
        });
    };
    for_each_connected_subset(g, -1, 1, std::min(m_max, g.node_count()),
                              visit, budget);
    return out;
}

CertifiedLog mayer_log_stab(const SimpleGraph& g, const std::vector<double>& x,
                            int m_max, const Budget& budget) {
    auto terms = mayer_terms(g, x, m_max, budget);
    // Sum order-by-order so the reduction order is deterministic and
    // matches the series structure.
    std::vector<double> by_order(m_max + 1, 0.0);
    for (const auto& term : terms) by_order[term.order] += term.contribution;
    CertifiedLog out;
    for (int m = 1; m <= m_max; ++m) out.value += by_order[m];
    out.per_node = false;

    // Tail bound: if the certificate holds for activities scaled by s0 > 1,
    // ln stab(s x) is analytic and bounded by B on |s| <= s0, so Cauchy
    // estimates give |tail| <= B / (s0^m_max (s0 - 1)).
    std::vector<double> abs_x(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) abs_x[i] = std::fabs(x[i]);
    const double scale_grid[] = {8, 4, 3, 2.5, 2, 1.75, 1.5, 1.35,
                                 1.25, 1.15, 1.1, 1.05, 1.02};
    const double b_grid[] = {0.05, 0.1, 0.2, 0.4, 0.8, 1.2, 2.0};
    for (double s0 : scale_grid) {
        std::vector<double> scaled(abs_x);
        for (double& v : scaled) v *= s0;
        for (double bb : b_grid) {
            std::vector<double> b(x.size(), bb);
            auto cert = dobrushin_certificate(g, scaled, b);
            if (!cert.holds) continue;
            double radius =
                cert.bound / (std::pow(s0, m_max) * (s0 - 1.0));
            out.error_radius = std::min(out.error_radius, radius);
        }
    }
    return out;
}

DobrushinCertificate dobrushin_certificate(const SimpleGraph& g,
                                           const std::vector<double>& x,
                                           const std::vector<double>& b) {
    const int n = g.node_count();
    if (static_cast<int>(x.size()) != n || static_cast<int>(b.size()) != n)
        throw argument_error("dobrushin: vector sizes must match node count");
    for (double bi : b)
        if (!(bi >= 0))
            throw precondition_error("dobrushin: b must be nonnegative");
    std::vector<double> gain(n);
    for (int i = 0; i < n; ++i)
        gain[i] = std::log1p(std::fabs(x[i]) * std::exp(b[i]));
    DobrushinCertificate out;
    out.holds = true;
    for (int i = 0; i < n && out.holds; ++i) {
        double row = gain[i];
        for (int j : g.neighbors(i)) row += gain[j];
        if (row > b[i]) out.holds = false;
    }
    if (out.holds)
        for (int i = 0; i < n; ++i) out.bound += gain[i];
    return out;
}

template <typename T>
PolymerSystemT<T> polymer_system_from(const SimpleGraph& g,
                                      const WeightedGraphT<T>& h,
                                      int max_polymer_nodes,
                                      const Budget& budget) {
    PolymerSystemT<T> out;
    int max_nodes = std::max(std::min(max_polymer_nodes, g.node_count()), 1);
    auto family = enumerate_family(g, FamilyKind::CInd, max_nodes, budget);
    out.polymers = std::move(family.members);
    const int p = static_cast<int>(out.polymers.size());
    std::vector<Edge> edges;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            const auto& a = out.polymers[i].nodes;
            const auto& b = out.polymers[j].nodes;
            // Sorted node lists: linear intersection test.
            std::size_t ia = 0, ib = 0;
            bool share = false;
            while (ia < a.size() && ib < b.size()) {
                if (a[ia] == b[ib]) {
                    share = true;
                    break;
                }
                (a[ia] < b[ib] ? ia : ib)++;
            }
            if (share) edges.push_back({i, j});
        }
    out.polymer_graph = SimpleGraph(p, std::move(edges));
    auto complement = h.complement();
    std::map<std::string, T> memo;
    out.activities.reserve(p);
    for (const auto& member : out.polymers) {
        SimpleGraph f = member.as_graph();
        auto key = canonical_key(f);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(std::move(key), z_value(f, complement, budget))
                     .first;
        out.activities.push_back(it->second);
    }
    return out;
}

template PolymerSystemT<double> polymer_system_from<double>(
    const SimpleGraph&, const WeightedGraphT<double>&, int, const Budget&);
template PolymerSystemT<Rational> polymer_system_from<Rational>(
    const SimpleGraph&, const WeightedGraphT<Rational>&, int, const Budget&);

}  // namespace homexp
