#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "homexp/canon.hpp"
#include "homexp/cavity.hpp"
#include "homexp/errors.hpp"
#include "homexp/grids.hpp"
#include "homexp/homcount.hpp"

using namespace homexp;

namespace {

WeightedGraph uniform_kq(int q) {
    std::vector<double> alpha(q, 1.0);
    std::vector<double> beta(q * q, 1.0);
    for (int i = 0; i < q; ++i) beta[i * q + i] = 0.0;
    return WeightedGraph(std::move(alpha), std::move(beta));
}

RationalWeightedGraph rational_kq(int q) {
    std::vector<Rational> alpha(q, Rational(1));
    std::vector<Rational> beta(q * q, Rational(1));
    for (int i = 0; i < q; ++i) beta[i * q + i] = 0;
    return RationalWeightedGraph(std::move(alpha), std::move(beta));
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

double fib(int n) {
    double a = 0, b = 1;
    for (int i = 0; i < n; ++i) {
        double next = a + b;
        a = b;
        b = next;
    }
    return a;
}

}  // namespace

TEST_CASE("grid construction") {
    CHECK(canonical_key(make_grid(GridKind::PathPath, 2, 2)) ==
          canonical_key(SimpleGraph::cycle(4)));
    CHECK(canonical_key(make_grid(GridKind::CyclePath, 3, 1)) ==
          canonical_key(SimpleGraph::cycle(3)));
    CHECK(canonical_key(make_grid(GridKind::PathPath, 1, 5)) ==
          canonical_key(SimpleGraph::path(5)));

    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 5; ++m) {
            auto g = make_grid(GridKind::PathPath, n, m);
            CHECK(g.node_count() == n * m);
            CHECK(g.edge_count() == 2 * n * m - n - m);
        }
    // Cylinders close the first factor; tori close both.
    CHECK(make_grid(GridKind::CyclePath, 4, 3).edge_count() == 4 * 2 + 4 * 3);
    CHECK(make_grid(GridKind::CycleCycle, 4, 4).edge_count() == 2 * 16);
    CHECK(make_grid(GridKind::CycleCycle, 3, 3).max_degree() == 4);

    CHECK_THROWS_AS(make_grid(GridKind::CyclePath, 2, 3), argument_error);
    CHECK_THROWS_AS(make_grid(GridKind::CycleCycle, 4, 2), argument_error);
    CHECK_THROWS_AS(make_grid(GridKind::PathPath, 0, 3), argument_error);

    CHECK(grid_kind_from_name("torus") == GridKind::CycleCycle);
    CHECK(grid_kind_name(GridKind::CyclePath) == "cylinder");
    CHECK_THROWS_AS(grid_kind_from_name("plane"), argument_error);
}

TEST_CASE("transfer graph identity") {
    // Exact identity in rational arithmetic: hom through the transfer
    // graph equals hom of the product graph, for paths and cycles.
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto h = random_weighted(3, 30'000 + seed);
        for (int m = 1; m <= 3; ++m) {
            auto transfer = transfer_graph(h, m);
            CHECK(static_cast<int>(transfer.maps.size()) <=
                  3 * 3 * 3);
            for (int n = 1; n <= 3; ++n) {
                auto grid = make_grid(GridKind::PathPath, n, m);
                CHECK(hom_count(SimpleGraph::path(n), transfer.graph) ==
                      hom_count(grid, h));
            }
            for (int n = 3; n <= 4; ++n) {
                auto cylinder = make_grid(GridKind::CyclePath, n, m);
                CHECK(hom_count(SimpleGraph::cycle(n), transfer.graph) ==
                      hom_count(cylinder, h));
            }
        }
    }

    // m = 1 reproduces the target itself.
    auto h = random_weighted(3, 31'000);
    auto transfer = transfer_graph(h, 1);
    REQUIRE(transfer.graph.node_count() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(transfer.graph.alpha(i) == h.alpha(i));
        for (int j = 0; j < 3; ++j)
            CHECK(transfer.graph.beta(i, j) == h.beta(i, j));
    }

    // Zero-weight columns are dropped: the uniform coloring target admits
    // only proper columns.
    auto proper = transfer_graph(rational_kq(3), 2);
    CHECK(proper.maps.size() == 6);

    // The support of the coloring transfer graph has no bipartite
    // component, as the cylinder convergence argument requires.
    for (int m = 1; m <= 3; ++m) {
        auto t = transfer_graph(uniform_kq(3), m);
        CHECK_FALSE(has_bipartite_support_component(t.graph));
    }
    CHECK(has_bipartite_support_component(uniform_kq(2)));

    Budget tiny;
    tiny.transfer_cap = 10;
    CHECK_THROWS_AS(transfer_graph(uniform_kq(4), 3, tiny), resource_error);
}

TEST_CASE("grid log partition values") {
    auto k3 = uniform_kq(3);

    // Exact against brute force on the 3 x 3 grid.
    double expected =
        std::log(hom_count(make_grid(GridKind::PathPath, 3, 3), k3)) / 9;
    CHECK(grid_ln_hom(GridKind::PathPath, 3, 3, k3) ==
          doctest::Approx(expected).epsilon(1e-10));

    // Strips of height one: independent sets of the path via the
    // hard-core model recover Fibonacci numbers.
    auto hc1 = hardcore_weighted_graph(1.0);
    for (int n = 2; n <= 10; ++n) {
        double value = grid_ln_hom(GridKind::PathPath, n, 1, hc1);
        double independent_sets = std::exp(value * n) * std::pow(2.0, n);
        CHECK(independent_sets == doctest::Approx(fib(n + 2)).epsilon(1e-9));
    }

    // Subadditivity in the path direction for [0,1] weights.
    for (int m = 2; m <= 3; ++m) {
        double v3 = grid_ln_hom(GridKind::PathPath, 3, m, k3) * 3 * m;
        double v4 = grid_ln_hom(GridKind::PathPath, 4, m, k3) * 4 * m;
        double v7 = grid_ln_hom(GridKind::PathPath, 7, m, k3) * 7 * m;
        CHECK(v7 <= v3 + v4 + 1e-9);
    }

    // Odd cylinders cannot map to a bipartite target.
    auto k2 = uniform_kq(2);
    CHECK(std::isinf(grid_ln_hom(GridKind::CyclePath, 3, 2, k2)));
    CHECK(grid_ln_hom(GridKind::CyclePath, 3, 2, k2) < 0);
    CHECK(std::isfinite(grid_ln_hom(GridKind::CyclePath, 4, 2, k2)));

    // Torus values against the exact dispatcher on small tori.
    for (int n = 3; n <= 4; ++n) {
        auto torus = make_grid(GridKind::CycleCycle, n, 3);
        double exact = std::log(hom_count(torus, k3)) / (3 * n);
        CHECK(grid_ln_hom(GridKind::CycleCycle, n, 3, k3) ==
              doctest::Approx(exact).epsilon(1e-10));
    }

    // Cylinder values against the dispatcher too.
    for (int n = 3; n <= 5; ++n) {
        auto cylinder = make_grid(GridKind::CyclePath, n, 2);
        double exact = std::log(hom_count(cylinder, k3)) / (2 * n);
        CHECK(grid_ln_hom(GridKind::CyclePath, n, 2, k3) ==
              doctest::Approx(exact).epsilon(1e-10));
    }

    // The Cauchy-Schwarz step of the cylinder convergence proof:
    // hom(C_n x P_m) >= hom(P_{n/2+1} x P_m)^2 / q^{2m} for even n.
    for (int n : {4, 6})
        for (int m : {2, 3}) {
            double lhs = grid_ln_hom(GridKind::CyclePath, n, m, k3) * n * m;
            double rhs = 2 * grid_ln_hom(GridKind::PathPath, n / 2 + 1, m,
                                         k3) *
                             (n / 2 + 1) * m -
                         2 * m * std::log(3.0);
            CHECK(lhs >= rhs - 1e-9);
        }

    Budget tiny;
    tiny.transfer_cap = 10;
    CHECK_THROWS_AS(grid_ln_hom(GridKind::PathPath, 4, 4, k3, tiny),
                    resource_error);
}

TEST_CASE("grid convergence tables") {
    auto k3 = uniform_kq(3);
    std::vector<std::pair<int, int>> squares;
    for (int s = 2; s <= 6; ++s) squares.push_back({s, s});
    auto table = convergence_experiment(GridKind::PathPath, k3, squares);
    REQUIRE(table.rows.size() == 5);
    CHECK(table.warning.empty());
    CHECK(table.rows[0].delta == 0.0);
    // Successive per-node differences shrink monotonically.
    for (std::size_t i = 2; i < table.rows.size(); ++i)
        CHECK(std::fabs(table.rows[i].delta) <=
              std::fabs(table.rows[i - 1].delta) + 1e-12);

    // Odd cylinders against K_2: minus-infinity entries and a hypothesis
    // warning.
    auto k2 = uniform_kq(2);
    auto odd = convergence_experiment(GridKind::CyclePath, k2,
                                      {{3, 2}, {5, 2}});
    CHECK_FALSE(odd.warning.empty());
    for (const auto& row : odd.rows) CHECK(std::isinf(row.value));

    // Restricting to even lengths gives a finite, converging column and no
    // warning.
    auto even = convergence_experiment(GridKind::CyclePath, k2,
                                       {{4, 2}, {6, 2}, {8, 2}});
    CHECK(even.warning.empty());
    for (const auto& row : even.rows) CHECK(std::isfinite(row.value));
    CHECK(std::fabs(even.rows[2].delta) <= std::fabs(even.rows[1].delta));
}
