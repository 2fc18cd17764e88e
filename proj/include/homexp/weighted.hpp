#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "homexp/errors.hpp"
#include "homexp/graph.hpp"
#include "homexp/numeric.hpp"

namespace homexp {

// Weighted target graph H: q nodes with positive node weights alpha and a
// symmetric real edge-weight matrix beta (loops allowed via the diagonal).
template <typename T>
class WeightedGraphT {
public:
    WeightedGraphT(std::vector<T> alpha, std::vector<T> beta)
        : alpha_(std::move(alpha)), beta_(std::move(beta)) {
        q_ = static_cast<int>(alpha_.size());
        if (q_ == 0) throw argument_error("weighted graph needs >= 1 node");
        if (beta_.size() != static_cast<std::size_t>(q_) * q_)
            throw argument_error("beta matrix must be q x q");
        alpha_total_ = T(0);
        for (const T& a : alpha_) {
            if (!(a > T(0)))
                throw argument_error("node weights must be positive");
            alpha_total_ += a;
        }
        for (int i = 0; i < q_; ++i)
            for (int j = i + 1; j < q_; ++j)
                if (beta_[i * q_ + j] != beta_[j * q_ + i])
                    throw argument_error("beta matrix must be symmetric");
    }

    int node_count() const { return q_; }
    const T& alpha(int i) const { return alpha_[i]; }
    const std::vector<T>& alphas() const { return alpha_; }
    const T& beta(int i, int j) const { return beta_[i * q_ + j]; }
    const T& alpha_total() const { return alpha_total_; }

    // Same graph with node weights summing to 1.
    WeightedGraphT normalized() const {
        std::vector<T> a = alpha_;
        for (T& x : a) x /= alpha_total_;
        return WeightedGraphT(std::move(a), beta_);
    }

    // Complement: every edge weight (including loops) becomes 1 - beta.
    WeightedGraphT complement() const {
        std::vector<T> b = beta_;
        for (T& x : b) x = T(1) - x;
        return WeightedGraphT(alpha_, std::move(b));
    }

    // Interaction norm c(H) = max_u sum_v (alpha_v / alpha_H) |beta_uv|.
    T interaction_norm() const {
        using std::abs;
        T best(0);
        for (int u = 0; u < q_; ++u) {
            T row(0);
            for (int v = 0; v < q_; ++v)
                row += alpha_[v] * abs(beta(u, v));
            row /= alpha_total_;
            best = std::max(best, row);
        }
        return best;
    }

    bool beta_in_unit_interval() const {
        return std::all_of(beta_.begin(), beta_.end(), [](const T& x) {
            return x >= T(0) && x <= T(1);
        });
    }

    // A simple graph viewed as a weighted one: unit node weights, edge
    // weights 1, non-edges and loops 0.
    static WeightedGraphT from_simple(const SimpleGraph& g) {
        int q = g.node_count();
        std::vector<T> alpha(q, T(1));
        std::vector<T> beta(static_cast<std::size_t>(q) * q, T(0));
        for (auto [u, v] : g.edges())
            beta[u * q + v] = beta[v * q + u] = T(1);
        return WeightedGraphT(std::move(alpha), std::move(beta));
    }

    // K_q with node weights 1/q: homomorphism densities of proper
    // q-colorings.
    static WeightedGraphT uniform_complete(int q) {
        if (q < 1) throw argument_error("uniform_complete needs q >= 1");
        std::vector<T> alpha(q, T(1) / T(q));
        std::vector<T> beta(static_cast<std::size_t>(q) * q, T(1));
        for (int i = 0; i < q; ++i) beta[i * q + i] = T(0);
        return WeightedGraphT(std::move(alpha), std::move(beta));
    }

    // Text format: "wgraph <q>" header, one alpha line, then q beta rows.
    static WeightedGraphT parse(std::istream& in);
    static WeightedGraphT load(const std::string& path);
    void save(std::ostream& out) const;

private:
    int q_ = 0;
    std::vector<T> alpha_;
    std::vector<T> beta_;  // row-major q x q
    T alpha_total_{};
};

using WeightedGraph = WeightedGraphT<double>;
using RationalWeightedGraph = WeightedGraphT<Rational>;

namespace detail {

template <typename T>
T weight_from_rational(const Rational& r) {
    if constexpr (std::is_same_v<T, Rational>)
        return r;
    else
        return static_cast<T>(to_double(r));
}

template <typename T>
std::string format_weight(const T& x) {
    if constexpr (std::is_same_v<T, Rational>) {
        std::ostringstream out;
        out << x;
        return out.str();
    } else {
        std::ostringstream out;
        out << std::setprecision(17) << x;
        return out.str();
    }
}

bool next_weight_line(std::istream& in, std::string& line);

}  // namespace detail

template <typename T>
WeightedGraphT<T> WeightedGraphT<T>::parse(std::istream& in) {
    std::string line;
    if (!detail::next_weight_line(in, line))
        throw argument_error("weighted graph file: missing header");
    std::istringstream header(line);
    std::string tag;
    int q = -1;
    header >> tag >> q;
    if (tag != "wgraph" || q < 1 || header.fail())
        throw argument_error(
            "weighted graph file: expected 'wgraph <q>' header, got '" + line +
            "'");
    auto read_row = [&](int count, const char* what) {
        if (!detail::next_weight_line(in, line))
            throw argument_error(std::string("weighted graph file: missing ") +
                                 what);
        std::istringstream row(line);
        std::vector<T> values;
        std::string tok;
        while (row >> tok)
            values.push_back(detail::weight_from_rational<T>(parse_rational(tok)));
        if (static_cast<int>(values.size()) != count)
            throw argument_error(std::string("weighted graph file: ") + what +
                                 " needs " + std::to_string(count) +
                                 " entries, got line '" + line + "'");
        return values;
    };
    std::vector<T> alpha = read_row(q, "alpha line");
    std::vector<T> beta;
    beta.reserve(static_cast<std::size_t>(q) * q);
    for (int i = 0; i < q; ++i) {
        auto row = read_row(q, "beta row");
        beta.insert(beta.end(), row.begin(), row.end());
    }
    return WeightedGraphT(std::move(alpha), std::move(beta));
}

template <typename T>
WeightedGraphT<T> WeightedGraphT<T>::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open weighted graph file: " + path);
    return parse(in);
}

template <typename T>
void WeightedGraphT<T>::save(std::ostream& out) const {
    out << "wgraph " << q_ << "\n";
    for (int i = 0; i < q_; ++i)
        out << (i ? " " : "") << detail::format_weight(alpha_[i]);
    out << "\n";
    for (int i = 0; i < q_; ++i) {
        for (int j = 0; j < q_; ++j)
            out << (j ? " " : "") << detail::format_weight(beta(i, j));
        out << "\n";
    }
}

// Hardcore model at activity lambda: occupied/empty node weights
// lambda/(1+lambda), 1/(1+lambda); adjacent occupied nodes forbidden.
template <typename T = double>
WeightedGraphT<T> hardcore_weighted_graph(const T& lambda) {
    if (!(lambda > T(0)))
        throw argument_error("hardcore activity must be positive");
    T denom = T(1) + lambda;
    std::vector<T> alpha{T(1) / denom, lambda / denom};
    std::vector<T> beta{T(1), T(1), T(1), T(0)};
    return WeightedGraphT<T>(std::move(alpha), std::move(beta));
}

template <typename T>
WeightedGraphT<double> to_double_graph(const WeightedGraphT<T>& h) {
    std::vector<double> alpha, beta;
    for (int i = 0; i < h.node_count(); ++i)
        alpha.push_back(to_double(h.alpha(i)));
    for (int i = 0; i < h.node_count(); ++i)
        for (int j = 0; j < h.node_count(); ++j)
            beta.push_back(to_double(h.beta(i, j)));
    return WeightedGraphT<double>(std::move(alpha), std::move(beta));
}

}  // namespace homexp
