#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "homexp/canon.hpp"
#include "homexp/errors.hpp"
#include "homexp/graph.hpp"
#include "homexp/numeric.hpp"
#include "homexp/weighted.hpp"

using namespace homexp;

namespace {

// Exhaustive isomorphism check, the oracle for canonical keys.
bool brute_iso(const SimpleGraph& a, const SimpleGraph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;
    std::vector<int> perm(a.node_count());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : a.edges())
            if (!b.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

bool brute_rooted_iso(const SimpleGraph& a, int ra, const SimpleGraph& b,
                      int rb) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;
    std::vector<int> perm(a.node_count());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (perm[ra] != rb) continue;
        bool ok = true;
        for (auto [u, v] : a.edges())
            if (!b.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<SimpleGraph> small_pool() {
    std::vector<SimpleGraph> pool;
    pool.push_back(SimpleGraph::edgeless(1));
    pool.push_back(SimpleGraph::edgeless(3));
    pool.push_back(SimpleGraph::path(2));
    pool.push_back(SimpleGraph::path(4));
    pool.push_back(SimpleGraph::path(5));
    pool.push_back(SimpleGraph::cycle(4));
    pool.push_back(SimpleGraph::cycle(5));
    pool.push_back(SimpleGraph::cycle(6));
    pool.push_back(SimpleGraph::complete(4));
    pool.push_back(SimpleGraph::star(3));
    pool.push_back(SimpleGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}}));  // paw-ish
    pool.push_back(SimpleGraph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}}));
    pool.push_back(disjoint_union(SimpleGraph::complete(3),
                                  SimpleGraph::complete(3)));
    pool.push_back(SimpleGraph(6, {{0, 1}, {2, 3}, {4, 5}}));
    // Relabeled C_5.
    pool.push_back(SimpleGraph(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}}));
    return pool;
}

}  // namespace

TEST_CASE("simple graph construction normalizes edges") {
    SimpleGraph g(4, {{2, 0}, {0, 2}, {3, 1}});
    CHECK(g.node_count() == 4);
    CHECK(g.edge_count() == 2);
    CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 3}});
    CHECK(g.has_edge(2, 0));
    CHECK(!g.has_edge(0, 1));
    CHECK(g.degree(0) == 1);
    CHECK(g.max_degree() == 1);
    CHECK_THROWS_AS(SimpleGraph(3, {{0, 3}}), argument_error);
    CHECK_THROWS_AS(SimpleGraph(3, {{1, 1}}), argument_error);
}

TEST_CASE("standard families have the expected shape") {
    CHECK(SimpleGraph::path(5).edge_count() == 4);
    CHECK(SimpleGraph::cycle(6).edge_count() == 6);
    CHECK(SimpleGraph::complete(5).edge_count() == 10);
    CHECK(SimpleGraph::star(4).max_degree() == 4);
    CHECK(SimpleGraph::cycle(6).max_degree() == 2);
    CHECK_THROWS_AS(SimpleGraph::cycle(2), argument_error);
}

TEST_CASE("connectivity and components") {
    auto g = disjoint_union(SimpleGraph::path(3), SimpleGraph::complete(2));
    CHECK(!g.connected());
    auto comps = g.components();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<int>{0, 1, 2});
    CHECK(comps[1] == std::vector<int>{3, 4});
    CHECK(SimpleGraph::cycle(7).connected());
    CHECK(SimpleGraph::edgeless(1).connected());

    auto dist = SimpleGraph::path(4).distances_from(0);
    CHECK(dist == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("induced subgraphs and node removal") {
    auto c5 = SimpleGraph::cycle(5);
    auto p3 = c5.induced({0, 1, 2});
    CHECK(p3.edge_count() == 2);
    CHECK(p3.has_edge(0, 1));
    CHECK(p3.has_edge(1, 2));
    CHECK(!p3.has_edge(0, 2));

    auto rest = c5.without_node(0);
    CHECK(rest.node_count() == 4);
    CHECK(rest.edge_count() == 3);  // path on the remaining nodes
    CHECK_THROWS_AS(c5.induced({0, 0}), argument_error);
}

TEST_CASE("cartesian product builds grid-like graphs") {
    auto c4 = cartesian_product(SimpleGraph::path(2), SimpleGraph::path(2));
    CHECK(c4.node_count() == 4);
    CHECK(c4.edge_count() == 4);
    CHECK(isomorphic(c4, SimpleGraph::cycle(4)));

    auto grid33 = cartesian_product(SimpleGraph::path(3), SimpleGraph::path(3));
    CHECK(grid33.node_count() == 9);
    CHECK(grid33.edge_count() == 12);
    CHECK(grid33.max_degree() == 4);
}

TEST_CASE("graph file round trip and error handling") {
    std::istringstream in(
        "# a pentagon\n"
        "graph 5\n"
        "0 1\n1 2\n2 3\n3 4  # last chord follows\n0 4\n");
    auto g = SimpleGraph::parse(in);
    CHECK(isomorphic(g, SimpleGraph::cycle(5)));

    std::ostringstream out;
    g.save(out);
    std::istringstream back(out.str());
    CHECK(SimpleGraph::parse(back) == g);

    std::istringstream bad1("graf 3\n0 1\n");
    CHECK_THROWS_AS(SimpleGraph::parse(bad1), argument_error);
    std::istringstream bad2("graph 3\n0 1 2\n");
    CHECK_THROWS_AS(SimpleGraph::parse(bad2), argument_error);
    std::istringstream bad3("graph 2\n0 5\n");
    CHECK_THROWS_AS(SimpleGraph::parse(bad3), argument_error);
}

TEST_CASE("random bounded-degree graphs are reproducible and bounded") {
    auto g1 = SimpleGraph::random_bounded_degree(16, 3, 0.3, 42);
    auto g2 = SimpleGraph::random_bounded_degree(16, 3, 0.3, 42);
    auto g3 = SimpleGraph::random_bounded_degree(16, 3, 0.3, 43);
    CHECK(g1 == g2);
    CHECK(!(g1 == g3));
    CHECK(g1.max_degree() <= 3);
    CHECK(g1.edge_count() > 0);
}

TEST_CASE("canonical keys agree with exhaustive isomorphism") {
    auto pool = small_pool();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i; j < pool.size(); ++j) {
            bool oracle = brute_iso(pool[i], pool[j]);
            CHECK_MESSAGE(
                (canonical_key(pool[i]) == canonical_key(pool[j])) == oracle,
                "pair ", i, ",", j);
            CHECK(isomorphic(pool[i], pool[j]) == oracle);
        }
    }
}

TEST_CASE("canonical keys separate regular non-isomorphic graphs") {
    // Both are 2-regular on 6 nodes, so degree refinement alone cannot
    // distinguish them.
    auto c6 = SimpleGraph::cycle(6);
    auto two_triangles =
        disjoint_union(SimpleGraph::complete(3), SimpleGraph::complete(3));
    CHECK(canonical_key(c6) != canonical_key(two_triangles));
}

TEST_CASE("rooted canonical keys agree with root-fixing isomorphism") {
    auto p4 = SimpleGraph::path(4);
    CHECK(canonical_rooted_key(p4, 0) == canonical_rooted_key(p4, 3));
    CHECK(canonical_rooted_key(p4, 1) == canonical_rooted_key(p4, 2));
    CHECK(canonical_rooted_key(p4, 0) != canonical_rooted_key(p4, 1));

    std::vector<SimpleGraph> pool{
        SimpleGraph::path(4), SimpleGraph::cycle(5), SimpleGraph::star(3),
        SimpleGraph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}}),
        SimpleGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}})};
    for (const auto& a : pool)
        for (const auto& b : pool)
            for (int ra = 0; ra < a.node_count(); ++ra)
                for (int rb = 0; rb < b.node_count(); ++rb)
                    CHECK(rooted_isomorphic(a, ra, b, rb) ==
                          brute_rooted_iso(a, ra, b, rb));
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-2.5") == Rational(-5, 2));
    CHECK(parse_rational("1/3") == Rational(1, 3));
    CHECK(parse_rational(" 7 ") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), argument_error);
    CHECK_THROWS_AS(parse_rational("abc"), argument_error);
    CHECK_THROWS_AS(parse_rational(""), argument_error);

    CHECK(format_rational(Rational(1, 4)) == "0.25");
    CHECK(format_rational(Rational(-5, 2)) == "-2.5");
    CHECK(format_rational(Rational(1, 3)) == "1/3");
    CHECK(format_rational(Rational(3)) == "3.0");
}

TEST_CASE("seed mixing and rng are deterministic") {
    CHECK(mix_seed(1, 2) == mix_seed(1, 2));
    CHECK(mix_seed(1, 2) != mix_seed(1, 3));
    CHECK(mix_seed(0, "label", 5) == mix_seed(0, "label", 5));
    CHECK(mix_seed(0, "label", 5) != mix_seed(0, "lobel", 5));

    Rng a(99), b(99);
    std::vector<int> xs(10), ys(10);
    std::iota(xs.begin(), xs.end(), 0);
    std::iota(ys.begin(), ys.end(), 0);
    a.shuffle(xs);
    b.shuffle(ys);
    CHECK(xs == ys);
    CHECK(!std::is_sorted(xs.begin(), xs.end()));

    double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);

    // Unbiased sampling below a bound.
    for (int i = 0; i < 100; ++i) CHECK(a.below(7) < 7);
}

TEST_CASE("weighted graph parsing, weights and derived graphs") {
    std::istringstream in(
        "# two-state model\n"
        "wgraph 2\n"
        "0.5 0.5\n"
        "1 1\n"
        "1 0\n");
    auto h = WeightedGraph::parse(in);
    CHECK(h.node_count() == 2);
    CHECK(h.alpha(0) == 0.5);
    CHECK(h.beta(0, 1) == 1.0);
    CHECK(h.beta(1, 1) == 0.0);
    CHECK(h.alpha_total() == 1.0);
    CHECK(h.beta_in_unit_interval());

    auto hbar = h.complement();
    CHECK(hbar.beta(0, 0) == 0.0);
    CHECK(hbar.beta(1, 1) == 1.0);
    // Only the occupied-occupied pair survives in the complement row sums.
    CHECK(hbar.interaction_norm() == doctest::Approx(0.5));

    auto k3 = WeightedGraph::uniform_complete(3);
    CHECK(k3.interaction_norm() == doctest::Approx(2.0 / 3.0));
    CHECK(k3.alpha_total() == doctest::Approx(1.0));

    auto hc = hardcore_weighted_graph(1.0);
    CHECK(hc.alpha(1) == doctest::Approx(0.5));
    CHECK(hc.complement().interaction_norm() == doctest::Approx(0.5));

    std::ostringstream out;
    h.save(out);
    std::istringstream back(out.str());
    auto h2 = WeightedGraph::parse(back);
    CHECK(h2.beta(1, 1) == 0.0);
    CHECK(h2.alpha(0) == 0.5);

    std::istringstream bad_sym("wgraph 2\n1 1\n0 1\n0.5 0\n");
    CHECK_THROWS_AS(WeightedGraph::parse(bad_sym), argument_error);
    std::istringstream bad_alpha("wgraph 2\n1 0\n0 1\n1 0\n");
    CHECK_THROWS_AS(WeightedGraph::parse(bad_alpha), argument_error);

    // Exact mode keeps decimal inputs exact.
    std::istringstream exact_in("wgraph 1\n0.1\n1\n");
    auto hr = RationalWeightedGraph::parse(exact_in);
    CHECK(hr.alpha(0) == Rational(1, 10));

    auto from_simple = WeightedGraph::from_simple(SimpleGraph::path(3));
    CHECK(from_simple.beta(0, 1) == 1.0);
    CHECK(from_simple.beta(0, 2) == 0.0);
    CHECK(from_simple.beta(1, 1) == 0.0);
    CHECK(from_simple.alpha_total() == 3.0);

    auto norm = from_simple.normalized();
    CHECK(norm.alpha(0) == doctest::Approx(1.0 / 3.0));
    CHECK(norm.alpha_total() == doctest::Approx(1.0));
}
