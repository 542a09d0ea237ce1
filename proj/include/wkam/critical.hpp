#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tropical.hpp"

namespace wkam {

/**
The critical constant alpha0 together with a witness.

witness_cycle lists the vertices of a simple cycle in order; the cycle
closes from the last vertex back to the first. Its mean cost is -alpha0.
reduced(x, y) = c(x, y) + alpha0.
*/
template <Scalar T>
struct CriticalData {
    T alpha0;
    std::vector<Index> witness_cycle;
    SquareMatrix<Extended<T>> reduced;

    const Extended<T>& r(Index x, Index y) const { return reduced(x, y); }
};

namespace detail {

template <Scalar T>
SquareMatrix<Extended<T>> shifted_costs(const CostInstance<T>& inst, const T& alpha) {
    SquareMatrix<Extended<T>> out = inst.cost;
    const std::size_t n = inst.size();
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) out(x, y) += Extended<T>(alpha);
    return out;
}

/// Potentials p with p(y) <= p(x) + w(x, y), from a virtual source at weight 0.
/// Requires w to have no negative cycle.
template <Scalar T>
std::vector<Extended<T>> source_potentials(const SquareMatrix<Extended<T>>& w) {
    const std::size_t n = w.size();
    std::vector<Extended<T>> d(n, Extended<T>(T(0)));
    for (std::size_t round = 0; round + 1 < n + 1; ++round) {
        bool changed = false;
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y) {
                Extended<T> cand = d[x] + w(x, y);
                if (cand < d[y]) {
                    d[y] = std::move(cand);
                    changed = true;
                }
            }
        if (!changed) break;
    }
    return d;
}

/// First cycle found by a lowest-index-first DFS over the edges accepted by `edge`.
template <class EdgePred>
std::vector<Index> find_cycle(std::size_t n, EdgePred edge) {
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<Index> stack;
    std::vector<Index> found;
    auto dfs = [&](auto&& self, Index v) -> bool {
        state[v] = 1;
        stack.push_back(v);
        for (Index w = 0; w < n; ++w) {
            if (!edge(v, w)) continue;
            if (state[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                found.assign(it, stack.end());
                return true;
            }
            if (state[w] == 0 && self(self, w)) return true;
        }
        stack.pop_back();
        state[v] = 2;
        return false;
    };
    for (Index s = 0; s < n; ++s)
        if (state[s] == 0 && dfs(dfs, s)) return found;
    return {};
}

}  // namespace detail

/**
alpha0 = -(minimum cycle mean), by Karp's recurrence with every vertex as a
start (D_0 = 0):

  lambda* = min_v max_{0<=k<n} (D_n(v) - D_k(v)) / (n - k).

The witness is a cycle of the tight subgraph of the reduced costs under
source potentials; every such cycle has zero reduced weight.
*/
template <Scalar T>
CriticalData<T> critical_value(const CostInstance<T>& inst) {
    const std::size_t n = inst.size();
    if (n == 0) throw std::invalid_argument("critical_value: empty instance");
    for (Index x = 0; x < n; ++x) {
        bool has_out = false;
        for (Index y = 0; y < n; ++y) has_out = has_out || inst(x, y).is_finite();
        if (!has_out) throw std::invalid_argument("critical_value: vertex " + inst.labels[x] + " has out-degree 0");
    }

    std::vector<std::vector<Extended<T>>> walk(n + 1, std::vector<Extended<T>>(n, Extended<T>::infinity()));
    std::fill(walk[0].begin(), walk[0].end(), Extended<T>(T(0)));
    for (std::size_t k = 1; k <= n; ++k)
        for (Index u = 0; u < n; ++u) {
            if (walk[k - 1][u].is_infinite()) continue;
            for (Index v = 0; v < n; ++v) {
                Extended<T> cand = walk[k - 1][u] + inst(u, v);
                if (cand < walk[k][v]) walk[k][v] = std::move(cand);
            }
        }

    std::optional<T> best;
    for (Index v = 0; v < n; ++v) {
        if (walk[n][v].is_infinite()) continue;
        std::optional<T> worst;
        for (std::size_t k = 0; k < n; ++k) {
            if (walk[k][v].is_infinite()) continue;
            T mean = (walk[n][v].value() - walk[k][v].value()) / T(static_cast<long>(n - k));
            if (!worst || *worst < mean) worst = mean;
        }
        if (worst && (!best || *worst < *best)) best = worst;
    }
    if (!best) throw std::invalid_argument("critical_value: the cost graph has no cycle");

    CriticalData<T> out;
    out.alpha0 = T(-*best);
    out.reduced = detail::shifted_costs(inst, out.alpha0);
    const auto pot = detail::source_potentials(out.reduced);
    const Compare<T> cmp = inst.compare();
    out.witness_cycle = detail::find_cycle(n, [&](Index x, Index y) {
        const auto& w = out.reduced(x, y);
        return w.is_finite() && cmp.eq(pot[x] + w, pot[y]);
    });
    if (out.witness_cycle.empty()) throw std::logic_error("critical_value: no tight cycle found");
    return out;
}

/// Result of a domination test; `witness` is a violating pair (x, y).
struct DominationResult {
    bool dominated = true;
    std::optional<std::pair<Index, Index>> witness;
    explicit operator bool() const { return dominated; }
};

/// u(y) - u(x) <= c(x, y) + alpha for every ordered pair.
template <Scalar T>
DominationResult is_dominated(const CostInstance<T>& inst, const ValueFunction<T>& u, const T& alpha) {
    require_same_size(inst.size(), u.size(), "is_dominated");
    if (!u.finite()) throw std::invalid_argument("is_dominated: u must be finite");
    const Compare<T> cmp = inst.compare();
    const Extended<T> a(alpha);
    for (Index x = 0; x < inst.size(); ++x)
        for (Index y = 0; y < inst.size(); ++y)
            if (!cmp.le(u[y] - u[x], inst(x, y) + a)) return {false, std::pair{x, y}};
    return {};
}

/// Either a dominated function or a cycle of negative weight under c + alpha.
template <Scalar T>
struct SubsolutionResult {
    std::optional<ValueFunction<T>> solution;
    std::vector<Index> negative_cycle;
    bool feasible() const { return solution.has_value(); }
};

/**
Difference-constraint feasibility: shortest-path potentials for the weights
c(x, y) + alpha from an auxiliary source joined at weight 0 to every point.
*/
template <Scalar T>
SubsolutionResult<T> solve_subsolution(const CostInstance<T>& inst, const T& alpha) {
    const std::size_t n = inst.size();
    const auto w = detail::shifted_costs(inst, alpha);
    const Compare<T> cmp = inst.compare();
    std::vector<Extended<T>> d(n, Extended<T>(T(0)));
    std::vector<Index> pred(n, n);
    const Index none = n;
    Index last_relaxed = none;
    for (std::size_t round = 0; round <= n; ++round) {
        last_relaxed = none;
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y) {
                Extended<T> cand = d[x] + w(x, y);
                if (cmp.lt(cand, d[y])) {
                    d[y] = std::move(cand);
                    pred[y] = x;
                    last_relaxed = y;
                }
            }
        if (last_relaxed == none) break;
    }
    SubsolutionResult<T> out;
    if (last_relaxed == none) {
        out.solution = ValueFunction<T>(d, "subsolution");
        return out;
    }
    // Walking n predecessors back lands on the negative cycle.
    Index v = last_relaxed;
    for (std::size_t i = 0; i < n; ++i) v = pred[v];
    std::vector<Index> cycle{v};
    for (Index p = pred[v]; p != v; p = pred[p]) cycle.push_back(p);
    std::reverse(cycle.begin(), cycle.end());
    out.negative_cycle = std::move(cycle);
    return out;
}

/// Total weight of the closed walk cycle[0] -> ... -> cycle.back() -> cycle[0].
template <Scalar T>
Extended<T> cycle_weight(const SquareMatrix<Extended<T>>& w, const std::vector<Index>& cycle) {
    Extended<T> total(T(0));
    for (Index i = 0; i < cycle.size(); ++i) total += w(cycle[i], cycle[(i + 1) % cycle.size()]);
    return total;
}

}  // namespace wkam
