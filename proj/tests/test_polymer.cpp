#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "homexp/canon.hpp"
#include "homexp/errors.hpp"
#include "homexp/homcount.hpp"
#include "homexp/invariants.hpp"
#include "homexp/polymer.hpp"

using namespace homexp;

namespace {

// Independent oracle: enumerate all node subsets and test independence.
template <typename T>
T stab_by_subsets(const SimpleGraph& g, const std::vector<T>& x) {
    int n = g.node_count();
    T out(0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        bool independent = true;
        for (auto [u, v] : g.edges())
            if ((mask >> u & 1) && (mask >> v & 1)) {
                independent = false;
                break;
            }
        if (!independent) continue;
        T term(1);
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) term *= x[i];
        out += term;
    }
    return out;
}

// The sequence graph on multiplicities[i] copies of nodes[i]: copies are
// adjacent iff their support nodes are equal or adjacent in g.
SimpleGraph materialize_sequence_graph(const SimpleGraph& g,
                                       const std::vector<int>& nodes,
                                       const std::vector<int>& mult) {
    int s = static_cast<int>(nodes.size());
    std::vector<int> offset(s, 0);
    int total = 0;
    for (int i = 0; i < s; ++i) {
        offset[i] = total;
        total += mult[i];
    }
    std::vector<Edge> edges;
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            bool linked = (i == j) || g.has_edge(nodes[i], nodes[j]);
            if (!linked) continue;
            for (int p = 0; p < mult[i]; ++p)
                for (int q = (i == j ? p + 1 : 0); q < mult[j]; ++q)
                    edges.push_back({offset[i] + p, offset[j] + q});
        }
    return SimpleGraph(total, std::move(edges));
}

RationalWeightedGraph random_weighted(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Rational> alpha(n);
    std::vector<Rational> beta(n * n, Rational(0));
    for (int i = 0; i < n; ++i)
        alpha[i] = Rational(1 + static_cast<long>(rng.below(8)), 4);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            auto w = Rational(static_cast<long>(rng.below(9)), 8);
            beta[i * n + j] = beta[j * n + i] = w;
        }
    return RationalWeightedGraph(std::move(alpha), std::move(beta));
}

SimpleGraph random_graph(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) edges.push_back({u, v});
    return SimpleGraph(n, std::move(edges));
}

// All isomorphism classes on exactly n labeled nodes.
std::vector<SimpleGraph> iso_classes(int n) {
    auto complete = SimpleGraph::complete(n);
    std::set<std::string> seen;
    std::vector<SimpleGraph> out;
    int m = complete.edge_count();
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        std::vector<Edge> edges;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) edges.push_back(complete.edges()[i]);
        SimpleGraph g(n, std::move(edges));
        if (seen.insert(canonical_key(g)).second) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

TEST_CASE("stable-set polynomial") {
    // stab(K_2, (x1, x2)) = 1 + x1 + x2.
    CHECK(stab_polynomial<double>(SimpleGraph::path(2), {0.25, 0.5}) ==
          doctest::Approx(1.75).epsilon(1e-15));
    // stab(P_3, all ones) counts the 5 independent sets.
    CHECK(stab_polynomial<Rational>(SimpleGraph::path(3),
                                    {Rational(1), Rational(1), Rational(1)}) ==
          Rational(5));

    // stab(G, all ones) counts independent sets, which is the number of
    // homomorphisms into two adjacent nodes with a loop at one of them.
    RationalWeightedGraph h0({Rational(1), Rational(1)},
                             {Rational(1), Rational(1),
                              Rational(1), Rational(0)});
    for (int n = 1; n <= 5; ++n)
        for (const auto& g : iso_classes(n)) {
            std::vector<Rational> ones(n, Rational(1));
            CHECK(stab_polynomial<Rational>(g, ones) ==
                  hom_count<Rational>(g, h0));
        }

    // Exact subset-enumeration oracle on random graphs and activities.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(900 + seed);
        int n = 2 + static_cast<int>(rng.below(8));
        auto g = random_graph(n, 0.4, 1700 + seed);
        std::vector<Rational> x(n);
        for (auto& v : x)
            v = Rational(static_cast<long>(rng.below(13)) - 6, 4);
        CHECK(stab_polynomial<Rational>(g, x) == stab_by_subsets(g, x));
    }

    // Activity-vector size must match; enumeration respects the budget.
    CHECK_THROWS_AS(stab_polynomial<double>(SimpleGraph::path(3), {1.0, 1.0}),
                    argument_error);
    Budget tiny;
    tiny.enum_cap = 3;
    std::vector<double> ones(12, 1.0);
    CHECK_THROWS_AS(
        stab_polynomial<double>(SimpleGraph::edgeless(12), ones, tiny),
        resource_error);
}

TEST_CASE("sequence-graph crapo invariants") {
    auto k1 = SimpleGraph::edgeless(1);
    // m copies of a single node form K_m: cr = (-1)^{m-1} (m-1)!.
    BigInt factorial = 1;
    for (int m = 1; m <= 6; ++m) {
        if (m > 1) factorial *= m - 1;
        BigInt expected = (m % 2 == 1) ? factorial : -factorial;
        CHECK(sequence_crapo(k1, {0}, {m}) == expected);
        CHECK(crapo_invariant(SimpleGraph::complete(m)) == expected);
    }

    auto k2 = SimpleGraph::path(2);
    auto two = SimpleGraph::edgeless(2);
    CHECK(sequence_crapo(k2, {0, 1}, {1, 1}) == -1);   // one edge
    CHECK(sequence_crapo(two, {0, 1}, {1, 1}) == 0);   // disconnected

    // Against the chromatic-polynomial oracle on materialized sequence
    // graphs, over random supports and multiplicities.
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(2200 + seed);
        int n = 2 + static_cast<int>(rng.below(4));
        auto g = random_graph(n, 0.6, 3100 + seed);
        int s = 1 + static_cast<int>(rng.below(std::uint64_t(n)));
        std::vector<int> nodes;
        for (int i = 0; i < n && static_cast<int>(nodes.size()) < s; ++i)
            if (rng.uniform() < 0.7) nodes.push_back(i);
        if (nodes.empty()) nodes.push_back(0);
        std::vector<int> mult(nodes.size());
        int room = 7;
        for (auto& a : mult) {
            a = 1 + static_cast<int>(rng.below(3));
            room -= a;
        }
        if (room < 0) continue;
        auto seq = materialize_sequence_graph(g, nodes, mult);
        CHECK(sequence_crapo(g, nodes, mult) == crapo_invariant(seq));
    }

    CHECK_THROWS_AS(sequence_crapo(k2, {0, 1}, {1}), argument_error);
    CHECK_THROWS_AS(sequence_crapo(k2, {0}, {0}), argument_error);
}

TEST_CASE("mayer expansion of ln stab") {
    // Single node: the series is ln(1+x) term by term.
    auto k1 = SimpleGraph::edgeless(1);
    auto terms = mayer_terms(k1, {0.3}, 6);
    REQUIRE(terms.size() == 6);
    for (const auto& term : terms) {
        int m = term.order;
        double expected = (m % 2 == 1 ? 1.0 : -1.0) * std::pow(0.3, m) / m;
        CHECK(term.contribution == doctest::Approx(expected).epsilon(1e-12));
    }
    auto log = mayer_log_stab(k1, {0.3}, 6);
    // Alternating-series tail bound for ln(1.3).
    CHECK(std::fabs(log.value - std::log1p(0.3)) <
          std::pow(0.3, 7) / 7 / (1 - 0.3));

    // x = 0: the polynomial is 1, the log is exactly 0 with zero radius.
    auto zero = mayer_log_stab(SimpleGraph::cycle(4), {0, 0, 0, 0}, 3);
    CHECK(zero.value == 0.0);
    CHECK(zero.certified());
    CHECK(zero.error_radius == 0.0);

    // K_2 with x = (0.1, 0.1) converges to ln 1.2.
    auto edge = mayer_log_stab(SimpleGraph::path(2), {0.1, 0.1}, 12);
    CHECK(std::fabs(edge.value - std::log(1.2)) < 1e-6);
    CHECK(edge.certified());
    CHECK(std::fabs(edge.value - std::log(1.2)) <= edge.error_radius + 1e-15);

    // Raw-sequence oracle: sum over all of V^m with the materialized
    // sequence graph's crapo invariant, m <= 4.
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Rng rng(4400 + seed);
        int n = 2 + static_cast<int>(rng.below(3));
        auto g = random_graph(n, 0.5, 5300 + seed);
        std::vector<double> x(n);
        for (auto& v : x) v = (rng.uniform() - 0.5) * 0.4;
        const int m_max = 4;
        double raw = 0.0;
        double factorial = 1.0;
        for (int m = 1; m <= m_max; ++m) {
            factorial *= m;
            std::vector<int> v(m, 0);
            while (true) {
                std::vector<int> mult(n, 0);
                double activity = 1.0;
                for (int i = 0; i < m; ++i) {
                    ++mult[v[i]];
                    activity *= x[v[i]];
                }
                std::vector<int> support, a;
                for (int i = 0; i < n; ++i)
                    if (mult[i] > 0) {
                        support.push_back(i);
                        a.push_back(mult[i]);
                    }
                auto seq = materialize_sequence_graph(g, support, a);
                raw += static_cast<double>(crapo_invariant(seq)) * activity /
                       factorial;
                int i = 0;
                while (i < m && ++v[i] == n) v[i++] = 0;
                if (i == m) break;
            }
        }
        auto collapsed = mayer_log_stab(g, x, m_max);
        CHECK(collapsed.value == doctest::Approx(raw).epsilon(1e-11));
    }

    CHECK_THROWS_AS(mayer_log_stab(k1, {0.5}, 0), precondition_error);
    CHECK_THROWS_AS(mayer_terms(k1, {0.5, 0.5}, 3), argument_error);
}

TEST_CASE("dobrushin certificate") {
    auto k1 = SimpleGraph::edgeless(1);
    auto all_zero = dobrushin_certificate(k1, {0.0}, {0.0});
    CHECK(all_zero.holds);
    CHECK(all_zero.bound == 0.0);

    auto small = dobrushin_certificate(k1, {0.1}, {0.2});
    CHECK(small.holds);
    CHECK(small.bound ==
          doctest::Approx(std::log1p(0.1 * std::exp(0.2))).epsilon(1e-15));
    CHECK(small.bound <= 0.2);

    CHECK_FALSE(dobrushin_certificate(k1, {10.0}, {0.2}).holds);

    // Soundness: whenever the certificate holds, the exact polynomial is
    // positive and |ln stab| is within the bound.
    int held = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(6100 + seed);
        int n = 2 + static_cast<int>(rng.below(7));
        auto g = random_graph(n, 0.4, 7200 + seed);
        std::vector<double> x(n);
        for (auto& v : x) v = (rng.uniform() - 0.5) * 0.12;
        std::vector<double> b(n, 0.3);
        auto cert = dobrushin_certificate(g, x, b);
        if (!cert.holds) continue;
        ++held;
        double stab = stab_polynomial<double>(g, x);
        CHECK(stab > 0.0);
        CHECK(std::fabs(std::log(stab)) <= cert.bound + 1e-12);
    }
    CHECK(held >= 10);

    CHECK_THROWS_AS(dobrushin_certificate(k1, {0.1, 0.2}, {0.3}),
                    argument_error);
    CHECK_THROWS_AS(dobrushin_certificate(k1, {0.1}, {-0.2}),
                    precondition_error);
}

TEST_CASE("mayer tail certificates are sound") {
    int certified = 0;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Rng rng(8300 + seed);
        int n = 2 + static_cast<int>(rng.below(5));
        auto g = random_graph(n, 0.5, 9100 + seed);
        std::vector<double> x(n);
        for (auto& v : x) v = (rng.uniform() - 0.5) * 0.1;
        double exact = std::log(stab_polynomial<double>(g, x));
        double previous_radius = -1.0;
        for (int m_max : {2, 4, 6}) {
            auto log = mayer_log_stab(g, x, m_max);
            if (!log.certified()) continue;
            ++certified;
            CHECK(std::fabs(log.value - exact) <= log.error_radius + 1e-12);
            if (previous_radius >= 0)
                CHECK(log.error_radius <= previous_radius + 1e-15);
            previous_radius = log.error_radius;
        }
    }
    CHECK(certified >= 20);

    // A concrete case that must certify: P_4 at activity 0.05.
    auto log = mayer_log_stab(SimpleGraph::path(4),
                              {0.05, 0.05, 0.05, 0.05}, 6);
    CHECK(log.certified());
    std::vector<double> x(4, 0.05);
    double exact = std::log(stab_polynomial<double>(SimpleGraph::path(4), x));
    CHECK(std::fabs(log.value - exact) <= log.error_radius);
}

TEST_CASE("polymer systems reproduce homomorphism densities") {
    // Host K_2: a single polymer whose activity is z(K_2, complement of H),
    // and 1 + z equals t(K_2, H).
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto h = random_weighted(3, 10'000 + seed);
        auto sys = polymer_system_from(SimpleGraph::path(2), h, 4);
        REQUIRE(sys.polymers.size() == 1);
        CHECK(sys.polymer_graph.node_count() == 1);
        CHECK(sys.polymer_graph.edge_count() == 0);
        CHECK(sys.activities[0] ==
              z_value(SimpleGraph::path(2), h.complement()));
        CHECK(Rational(1) + sys.activities[0] ==
              density(SimpleGraph::path(2), h));
    }

    // Two disjoint edges: two non-interacting polymers, so the stable-set
    // polynomial factorizes into the per-edge densities.
    {
        SimpleGraph two_edges(4, {{0, 1}, {2, 3}});
        auto h = random_weighted(3, 11'000);
        auto sys = polymer_system_from(two_edges, h, 4);
        REQUIRE(sys.polymers.size() == 2);
        CHECK(sys.polymer_graph.edge_count() == 0);
        auto stab = stab_polynomial<Rational>(sys.polymer_graph,
                                              sys.activities);
        CHECK(stab == density(two_edges, h));
        auto t_edge = density(SimpleGraph::path(2), h);
        CHECK(stab == t_edge * t_edge);
    }

    // The untruncated identity stab = t(G,H), exactly in rational
    // arithmetic, for every isomorphism class on up to 4 nodes.
    for (int n = 1; n <= 4; ++n)
        for (const auto& g : iso_classes(n)) {
            auto h = random_weighted(3, 12'000 + n);
            auto sys = polymer_system_from(g, h, n);
            auto stab = stab_polynomial<Rational>(sys.polymer_graph,
                                                  sys.activities);
            CHECK(stab == density(g, h));
        }

    // Intersection graph edges appear exactly on sharing node sets.
    {
        auto sys = polymer_system_from(SimpleGraph::path(4),
                                       random_weighted(2, 13'000), 4);
        REQUIRE(sys.polymers.size() == 6);
        for (std::size_t i = 0; i < sys.polymers.size(); ++i)
            for (std::size_t j = i + 1; j < sys.polymers.size(); ++j) {
                std::set<int> a(sys.polymers[i].nodes.begin(),
                                sys.polymers[i].nodes.end());
                bool share = false;
                for (int v : sys.polymers[j].nodes) share |= a.count(v) > 0;
                CHECK(sys.polymer_graph.has_edge(static_cast<int>(i),
                                                 static_cast<int>(j)) ==
                      share);
            }
    }

    // Truncation keeps only small polymers.
    {
        auto sys = polymer_system_from(SimpleGraph::path(4),
                                       random_weighted(2, 14'000), 2);
        REQUIRE(sys.polymers.size() == 3);
        for (const auto& p : sys.polymers) CHECK(p.nodes.size() == 2);
    }

    // Double-precision instantiation agrees with the rational identity.
    {
        auto g = SimpleGraph::cycle(4);
        auto hr = random_weighted(3, 15'000);
        std::vector<double> alpha, beta;
        for (int i = 0; i < 3; ++i) alpha.push_back(to_double(hr.alpha(i)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                beta.push_back(to_double(hr.beta(i, j)));
        WeightedGraph hd(std::move(alpha), std::move(beta));
        auto sys = polymer_system_from(g, hd, 4);
        auto stab = stab_polynomial<double>(sys.polymer_graph,
                                            sys.activities);
        CHECK(stab == doctest::Approx(to_double(density(g, hr)))
                          .epsilon(1e-12));
    }
}
