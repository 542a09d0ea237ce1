#pragma once

#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"

/*
Brute-force references. None of these call the min-plus kernels, Karp's
recurrence or the value iteration they are used to check: cycles and walks
are enumerated recursively, and reachability is computed on booleans.
*/

namespace wkam::oracle {

/// Instance larger than an enumeration guard allows.
class GuardError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxCyclePoints = 10;
inline constexpr std::size_t kMaxWalkPoints = 6;
inline constexpr std::size_t kMaxWalkSteps = 6;

inline void guard(std::size_t value, std::size_t limit, const char* what) {
    if (value > limit)
        throw GuardError(std::string(what) + ": size " + std::to_string(value) + " exceeds the oracle guard " +
                         std::to_string(limit));
}

/// Visits every simple cycle once, rooted at its smallest vertex.
template <Scalar T, class Visit>
void for_each_simple_cycle(const SquareMatrix<Extended<T>>& w, Visit visit) {
    const std::size_t n = w.size();
    std::vector<Index> path;
    std::vector<bool> used(n, false);
    auto extend = [&](auto&& self, Index root, Index v, const Extended<T>& weight) -> void {
        for (Index next = root; next < n; ++next) {
            if (w(v, next).is_infinite()) continue;
            if (next == root) {
                visit(path, weight + w(v, next));
            } else if (!used[next]) {
                used[next] = true;
                path.push_back(next);
                self(self, root, next, weight + w(v, next));
                path.pop_back();
                used[next] = false;
            }
        }
    };
    for (Index root = 0; root < n; ++root) {
        path = {root};
        used.assign(n, false);
        used[root] = true;
        extend(extend, root, root, Extended<T>(T(0)));
    }
}

template <Scalar T>
struct CycleEnumeration {
    std::optional<T> min_mean;
    std::vector<std::vector<Index>> attaining;
    std::size_t cycle_count = 0;
};

/// Minimum mean over all simple cycles and every cycle attaining it.
template <Scalar T>
CycleEnumeration<T> enum_cycles(const CostInstance<T>& inst) {
    guard(inst.size(), kMaxCyclePoints, "enum_cycles");
    const Compare<T> cmp = inst.compare();
    CycleEnumeration<T> out;
    for_each_simple_cycle<T>(inst.cost, [&](const std::vector<Index>& cyc, const Extended<T>& weight) {
        ++out.cycle_count;
        const T mean = weight.value() / T(static_cast<long>(cyc.size()));
        if (!out.min_mean || cmp.lt(mean, *out.min_mean)) {
            out.min_mean = mean;
            out.attaining.clear();
        }
        if (cmp.eq(mean, *out.min_mean)) out.attaining.push_back(cyc);
    });
    return out;
}

/// c_n(x, y) by enumerating every intermediate sequence.
template <Scalar T>
Extended<T> enum_walks(const CostInstance<T>& inst, Index x, Index y, std::size_t steps) {
    guard(inst.size(), kMaxWalkPoints, "enum_walks (points)");
    guard(steps, kMaxWalkSteps, "enum_walks (steps)");
    if (steps == 0) throw std::invalid_argument("enum_walks: at least one step");
    Extended<T> best = Extended<T>::infinity();
    auto walk = [&](auto&& self, Index at, std::size_t left, const Extended<T>& acc) -> void {
        if (left == 1) {
            best = min(best, acc + inst(at, y));
            return;
        }
        for (Index next = 0; next < inst.size(); ++next) self(self, next, left - 1, acc + inst(at, next));
    };
    walk(walk, x, steps, Extended<T>(T(0)));
    return best;
}

template <Scalar T>
struct LiminfResult {
    SquareMatrix<Extended<T>> h;
    bool stabilized = false;
};

/**
Tail minima of r_k = c_k + k alpha0 over k in [N/2, N] versus its second
half [3N/4, N]; stabilized when dropping the first half changes nothing.
r_k is built walk-length by walk-length from explicit edge relaxations.
*/
template <Scalar T>
LiminfResult<T> liminf_barrier_bounded(const CostInstance<T>& inst, const CriticalData<T>& crit, std::size_t horizon) {
    if (horizon < 2) throw std::invalid_argument("liminf_barrier_bounded: N must be at least 2");
    const std::size_t n = inst.size();
    const std::size_t mid = (horizon + 1) / 2;
    const std::size_t late = mid + (horizon - mid + 1) / 2;
    const Compare<T> cmp = inst.compare();
    LiminfResult<T> out{SquareMatrix<Extended<T>>(n, Extended<T>::infinity()), true};
    for (Index x = 0; x < n; ++x) {
        std::vector<Extended<T>> layer(n, Extended<T>::infinity()), wide(n, Extended<T>::infinity()),
            narrow(n, Extended<T>::infinity());
        layer[x] = Extended<T>(T(0));
        for (std::size_t k = 1; k <= horizon; ++k) {
            std::vector<Extended<T>> next(n, Extended<T>::infinity());
            for (Index from = 0; from < n; ++from) {
                if (layer[from].is_infinite()) continue;
                for (Index to = 0; to < n; ++to) {
                    const Extended<T> cand = layer[from] + inst(from, to) + Extended<T>(crit.alpha0);
                    if (cand < next[to]) next[to] = cand;
                }
            }
            layer = std::move(next);
            for (Index y = 0; y < n; ++y) {
                if (k >= mid) wide[y] = min(wide[y], layer[y]);
                if (k >= late) narrow[y] = min(narrow[y], layer[y]);
            }
        }
        for (Index y = 0; y < n; ++y) {
            out.h(x, y) = narrow[y];
            if (!cmp.eq(wide[y], narrow[y])) out.stabilized = false;
        }
    }
    return out;
}

/// Doubles N from 16 until the bounded liminf stabilises (cap 8192).
template <Scalar T>
LiminfResult<T> liminf_barrier(const CostInstance<T>& inst, const CriticalData<T>& crit) {
    LiminfResult<T> res;
    for (std::size_t horizon = 16; horizon <= 8192; horizon *= 2) {
        res = liminf_barrier_bounded(inst, crit, horizon);
        if (res.stabilized) return res;
    }
    return res;
}

/// Vertices and edges lying on simple cycles of zero reduced weight.
template <Scalar T>
AubryData enum_zero_cycles(const CostInstance<T>& inst, const CriticalData<T>& crit) {
    guard(inst.size(), kMaxCyclePoints, "enum_zero_cycles");
    const Compare<T> cmp = inst.compare();
    std::set<Index> verts;
    AubryData out;
    for_each_simple_cycle<T>(crit.reduced, [&](const std::vector<Index>& cyc, const Extended<T>& weight) {
        if (!cmp.eq(weight, Extended<T>(T(0)))) return;
        for (Index i = 0; i < cyc.size(); ++i) {
            verts.insert(cyc[i]);
            out.edges.insert({cyc[i], cyc[(i + 1) % cyc.size()]});
        }
    });
    out.vertices.assign(verts.begin(), verts.end());
    return out;
}

/**
Bi-infinite calibrated chains of u on a finite set: steps are u-tight edges,
and a chain through x exists iff x is reached from a tight cycle and reaches
one. Returns (A_u, edge set of A_u).
*/
template <Scalar T>
AubryData calibrated_chains(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u) {
    const std::size_t n = inst.size();
    const Compare<T> cmp = inst.compare();
    std::vector<std::vector<bool>> tight(n, std::vector<bool>(n)), reach(n, std::vector<bool>(n));
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) reach[x][y] = tight[x][y] = cmp.eq(u[y] - u[x], crit.r(x, y));
    for (Index k = 0; k < n; ++k)
        for (Index i = 0; i < n; ++i)
            if (reach[i][k])
                for (Index j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    auto from_cycle = [&](Index x) {
        for (Index a = 0; a < n; ++a)
            if (reach[a][a] && (a == x || reach[a][x])) return true;
        return false;
    };
    auto to_cycle = [&](Index x) {
        for (Index b = 0; b < n; ++b)
            if (reach[b][b] && (b == x || reach[x][b])) return true;
        return false;
    };
    AubryData out;
    for (Index x = 0; x < n; ++x)
        if (from_cycle(x) && to_cycle(x)) out.vertices.push_back(x);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            if (tight[x][y] && from_cycle(x) && to_cycle(y)) out.edges.insert({x, y});
    return out;
}

/**
Seeded critically dominated functions: random convex combinations (positive
integer weights) of the rows phi_x, h_x and a difference-constraint solution
(generators failing domination are dropped), plus a constant shift from the grid [-5, 5] in steps of 1/4.
*/
template <Scalar T>
std::vector<ValueFunction<T>> subsolution_sampler(const CostInstance<T>& inst, const Analysis<T>& a, std::uint64_t seed,
                                                  std::size_t count) {
    std::vector<ValueFunction<T>> pool;
    auto offer = [&](ValueFunction<T> u) {
        if (u.finite() && is_dominated(inst, u, a.crit.alpha0)) pool.push_back(std::move(u));
    };
    for (Index x = 0; x < inst.size(); ++x) {
        offer(a.phi.row(x));
        offer(a.bar.h.row(x));
    }
    if (auto sub = solve_subsolution(inst, a.crit.alpha0); sub.feasible()) offer(*sub.solution);
    if (pool.empty()) throw std::logic_error("subsolution_sampler: no dominated generator");
    std::mt19937_64 rng(seed);
    std::vector<ValueFunction<T>> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<T> weights(pool.size(), T(0));
        long total = 0;
        const std::size_t picks = 1 + rng() % std::min<std::size_t>(pool.size(), 4);
        for (std::size_t p = 0; p < picks; ++p) {
            const long w = 1 + static_cast<long>(rng() % 8);
            weights[rng() % pool.size()] += T(w);
            total += w;
        }
        for (auto& w : weights) w = w / T(total);
        const long shift = static_cast<long>(rng() % 41) - 20;
        ValueFunction<T> u = shifted(linear_combination(pool, weights), ScalarTraits<T>::from_ratio(shift, 4));
        u.tag = "sample";
        if (!is_dominated(inst, u, a.crit.alpha0)) throw std::logic_error("subsolution_sampler: produced a non-dominated sample");
        out.push_back(std::move(u));
    }
    return out;
}

}  // namespace wkam::oracle
