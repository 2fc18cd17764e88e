#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "homexp/canon.hpp"
#include "homexp/errors.hpp"
#include "homexp/localstats.hpp"
#include "homexp/numeric.hpp"

using namespace homexp;

namespace {

SimpleGraph relabeled(const SimpleGraph& g, std::uint64_t seed) {
    std::vector<int> perm(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) perm[i] = i;
    Rng rng(seed);
    rng.shuffle(perm);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        int a = perm[u], b = perm[v];
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return SimpleGraph(g.node_count(), std::move(edges));
}

}  // namespace

TEST_CASE("balls extract rooted neighborhoods") {
    auto c8 = SimpleGraph::cycle(8);
    auto b0 = ball(c8, 0, 0);
    CHECK(b0.node_count == 1);

    // Any node of a long cycle sees a path of length 2r centered at the
    // root, for n >= 2r+2.
    for (int r = 1; r <= 3; ++r) {
        auto expect = RootedBall{canonical_rooted_key(SimpleGraph::path(2 * r + 1), r),
                                 r, 2 * r + 1};
        for (int v = 0; v < 8; ++v) {
            if (8 < 2 * r + 2) break;
            auto b = ball(c8, v, r);
            CHECK(b.encoding == expect.encoding);
            CHECK(b.node_count == 2 * r + 1);
        }
    }

    // P_4: the two interior balls at r=1 agree, endpoints differ.
    auto p4 = SimpleGraph::path(4);
    CHECK(ball(p4, 1, 1) == ball(p4, 2, 1));
    CHECK(ball(p4, 0, 1) == ball(p4, 3, 1));
    CHECK_FALSE(ball(p4, 0, 1) == ball(p4, 1, 1));

    // Large radius saturates at the whole component.
    auto b_all = ball(p4, 1, 10);
    CHECK(b_all.node_count == 4);

    CHECK_THROWS_AS(ball(p4, 9, 1), argument_error);
    CHECK_THROWS_AS(ball(p4, 0, -1), argument_error);
}

TEST_CASE("histograms are exact ball distributions") {
    auto c10 = SimpleGraph::cycle(10);
    auto h = histogram(c10, 1);
    REQUIRE(h.frequencies.size() == 1);
    CHECK(h.frequencies.begin()->second == 1);
    CHECK(h.frequencies.begin()->first.encoding ==
          canonical_rooted_key(SimpleGraph::path(3), 1));

    auto p10 = histogram(SimpleGraph::path(10), 1);
    REQUIRE(p10.frequencies.size() == 2);
    Rational total = 0;
    bool saw_interior = false, saw_endpoint = false;
    for (const auto& [ball_key, freq] : p10.frequencies) {
        total += freq;
        if (freq == Rational(8, 10)) saw_interior = true;
        if (freq == Rational(2, 10)) saw_endpoint = true;
    }
    CHECK(total == 1);
    CHECK(saw_interior);
    CHECK(saw_endpoint);

    // Frequencies always sum to exactly 1.
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto g = SimpleGraph::random_bounded_degree(9, 3, 0.5, seed);
        for (int r = 0; r <= 3; ++r) {
            Rational sum = 0;
            for (const auto& [ball_key, freq] : histogram(g, r).frequencies) {
                CHECK(freq > 0);
                sum += freq;
            }
            CHECK(sum == 1);
        }
    }
}

TEST_CASE("histograms are relabeling invariant") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto g = SimpleGraph::random_bounded_degree(8, 3, 0.6, mix_seed(3, seed));
        auto shuffled = relabeled(g, mix_seed(5, seed));
        for (int r = 1; r <= 2; ++r) {
            auto h1 = histogram(g, r);
            auto h2 = histogram(shuffled, r);
            CHECK(h1.frequencies == h2.frequencies);
        }
    }
}

TEST_CASE("local distance") {
    auto c10 = SimpleGraph::cycle(10);
    auto c12 = SimpleGraph::cycle(12);
    CHECK(local_distance(c10, c10, 2) == 0);
    for (int r = 0; r <= 4; ++r) CHECK(local_distance(c10, c12, r) == 0);
    CHECK(local_distance(c10, SimpleGraph::path(10), 1) == Rational(1, 5));

    // Distance is symmetric and satisfies the triangle inequality.
    std::vector<SimpleGraph> pool = {
        SimpleGraph::cycle(10), SimpleGraph::path(10), SimpleGraph::star(9),
        SimpleGraph::random_bounded_degree(10, 3, 0.5, 17),
        SimpleGraph::random_bounded_degree(10, 3, 0.5, 19)};
    for (std::size_t a = 0; a < pool.size(); ++a)
        for (std::size_t b = 0; b < pool.size(); ++b) {
            CHECK(local_distance(pool[a], pool[b], 2) ==
                  local_distance(pool[b], pool[a], 2));
            for (std::size_t c = 0; c < pool.size(); ++c)
                CHECK(local_distance(pool[a], pool[c], 2) <=
                      local_distance(pool[a], pool[b], 2) +
                          local_distance(pool[b], pool[c], 2));
        }

    // Distances lie in [0,1]; disjoint supports reach 1.
    CHECK(local_distance(SimpleGraph::cycle(4), SimpleGraph::path(2), 1) == 1);
}

TEST_CASE("hex encoding is stable and printable") {
    auto b = ball(SimpleGraph::cycle(6), 0, 1);
    auto hex = hex_encoding(b);
    CHECK(hex.size() == 2 * b.encoding.size());
    CHECK(hex.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(hex == hex_encoding(ball(SimpleGraph::cycle(6), 3, 1)));
}
