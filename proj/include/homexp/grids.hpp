#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homexp/config.hpp"
#include "homexp/graph.hpp"
#include "homexp/weighted.hpp"

namespace homexp {

enum class GridKind { PathPath, CyclePath, CycleCycle };

// Names used by the CLI: "grid", "cylinder", "torus".
GridKind grid_kind_from_name(const std::string& name);
std::string grid_kind_name(GridKind kind);

// Cartesian products P_n x P_m, C_n x P_m, C_n x C_m.  The first factor has
// size n; cyclic factors need length >= 3.
SimpleGraph make_grid(GridKind kind, int n, int m);

// The auxiliary transfer graph over height-m columns: nodes are maps from
// P_m into V(H) carrying positive weight, node weight the full column
// weight and edge weights the per-level couplings.  Satisfies
// hom(P_n x P_m, H) = hom(P_n, transfer) and likewise for cycles.
template <typename T>
struct TransferGraphT {
    WeightedGraphT<T> graph;
    std::vector<std::vector<int>> maps;  // column map per transfer node
    int layer_size = 1;
};

using TransferGraph = TransferGraphT<double>;

template <typename T>
TransferGraphT<T> transfer_graph(const WeightedGraphT<T>& h, int m,
                                 const Budget& budget = default_budget());

// ln hom(grid, H) / (n m), computed through transfer-operator powers in
// log-scaled arithmetic; -infinity when hom vanishes.
double grid_ln_hom(GridKind kind, int n, int m, const WeightedGraph& h,
                   const Budget& budget = default_budget());

struct GridConvergenceRow {
    int n = 0;
    int m = 0;
    double value = 0.0;  // ln hom per node
    double delta = 0.0;  // value minus previous row's value
};

struct GridConvergenceTable {
    std::vector<GridConvergenceRow> rows;
    std::string warning;  // nonempty when a convergence hypothesis fails
};

// Tabulates ln hom per node over a size schedule with successive
// differences; warns when cyclic kinds are run at odd lengths against a
// target whose support is bipartite or disconnected.
GridConvergenceTable convergence_experiment(
    GridKind kind, const WeightedGraph& h,
    const std::vector<std::pair<int, int>>& sizes,
    const Budget& budget = default_budget());

// True when some connected component of the positive-weight support of H
// (loops included) is bipartite.
bool has_bipartite_support_component(const WeightedGraph& h);

}  // namespace homexp
