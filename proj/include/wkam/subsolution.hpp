#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "barrier.hpp"

namespace wkam {

/// Finite chain of points x_0, ..., x_n (n >= 1).
struct Chain {
    std::vector<Index> points;
};

/// u(x_n) = u(x_0) + c(x_0,x_1) + ... + c(x_{n-1},x_n) + n alpha0.
template <Scalar T>
bool is_calibrated(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u, const Chain& chain) {
    if (chain.points.size() < 2) throw std::invalid_argument("is_calibrated: chain needs at least two points");
    for (Index p : chain.points)
        if (p >= inst.size()) throw std::invalid_argument("is_calibrated: point index out of range");
    detail::require_dominated(inst, crit, u, "is_calibrated");
    Extended<T> rhs = u[chain.points.front()];
    for (Index i = 0; i + 1 < chain.points.size(); ++i) rhs += crit.r(chain.points[i], chain.points[i + 1]);
    return inst.compare().eq(u[chain.points.back()], rhs);
}

/// Pair (x, y) where the domination inequality of u is an equality.
template <Scalar T>
bool is_tight(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u, Index x, Index y) {
    return inst.compare().eq(u[y] - u[x], crit.r(x, y));
}

/// u(y) - u(x) < c(x, y) + alpha0.
template <Scalar T>
bool is_strict_at(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u, Index x, Index y) {
    return inst.compare().lt(u[y] - u[x], crit.r(x, y));
}

/// A_u = {x : u_-(x) = u(x) = u_+(x)}.
template <Scalar T>
std::vector<Index> aubry_of(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u) {
    const auto lower = u_minus(inst, crit, u);
    const auto upper = u_plus(inst, crit, u);
    const Compare<T> cmp = inst.compare();
    std::vector<Index> out;
    for (Index x = 0; x < inst.size(); ++x)
        if (cmp.eq(lower[x], u[x]) && cmp.eq(upper[x], u[x])) out.push_back(x);
    return out;
}

/**
Edge Aubry set of u: tight pairs (x, y) with both ends in A_u. A backward
calibrated ray into x, the tight step x -> y and a forward ray out of y
concatenate into a bi-infinite calibrated chain.
*/
template <Scalar T>
std::set<std::pair<Index, Index>> edge_aubry_of(const CostInstance<T>& inst, const CriticalData<T>& crit,
                                                const ValueFunction<T>& u) {
    const auto verts = aubry_of(inst, crit, u);
    std::set<std::pair<Index, Index>> out;
    for (Index x : verts)
        for (Index y : verts)
            if (is_tight(inst, crit, u, x, y)) out.insert({x, y});
    return out;
}

/// Ordered pairs at which u is strict.
template <Scalar T>
std::set<std::pair<Index, Index>> strict_pairs(const CostInstance<T>& inst, const CriticalData<T>& crit,
                                               const ValueFunction<T>& u) {
    std::set<std::pair<Index, Index>> out;
    for (Index x = 0; x < inst.size(); ++x)
        for (Index y = 0; y < inst.size(); ++y)
            if (is_strict_at(inst, crit, u, x, y)) out.insert({x, y});
    return out;
}

/**
u' = (v_0 + ... + v_N + w_1 + ... + w_N) / (2N + 1) with the normalised
iterates v_n = T^{-n} u + n alpha0 and w_n = T^{+n} u - n alpha0, where N
is the larger stabilisation index of u_- and u_+. Strict off the edge
Aubry set of u and equal to u on A_u.
*/
template <Scalar T>
ValueFunction<T> strict_subsolution(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u) {
    detail::require_dominated(inst, crit, u, "strict_subsolution");
    const std::size_t horizon = std::max(u_minus_limit(inst, crit, u).steps, u_plus_limit(inst, crit, u).steps);
    std::vector<ValueFunction<T>> terms{u};
    ValueFunction<T> fw = u, bw = u;
    for (std::size_t k = 1; k <= horizon; ++k) {
        fw = shifted(lax_oleinik_neg(inst, fw), crit.alpha0);
        bw = shifted(lax_oleinik_pos(inst, bw), T(-crit.alpha0));
        terms.push_back(fw);
        terms.push_back(bw);
    }
    const T weight = T(1) / T(static_cast<long>(terms.size()));
    ValueFunction<T> out = linear_combination(terms, std::vector<T>(terms.size(), weight));
    out.tag = "strict";
    return out;
}

/// Thrown when the surrogate u* does not realise A_{u*} = A.
class ConstructionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
A dominated function strict at every pair outside the global edge Aubry set:
strict_subsolution applied to u*, the uniform average of the rows
phi_x - phi_x(x_0).
*/
template <Scalar T>
ValueFunction<T> max_strict_subsolution(const CostInstance<T>& inst, const CriticalData<T>& crit) {
    const auto phi = mane_potential(inst, crit);
    const std::size_t n = inst.size();
    std::vector<ValueFunction<T>> rows;
    for (Index x = 0; x < n; ++x) rows.push_back(shifted(phi.row(x), T(-phi(x, 0).value())));
    const T weight = T(1) / T(static_cast<long>(n));
    const ValueFunction<T> mixed = linear_combination(rows, std::vector<T>(n, weight));

    const auto bar = peierls_barrier(inst, crit);
    const auto global = aubry(inst, crit, bar).sets.vertices;
    if (aubry_of(inst, crit, mixed) != global)
        throw ConstructionError("max_strict_subsolution: the averaged potential rows do not realise the Aubry set");
    ValueFunction<T> out = strict_subsolution(inst, crit, mixed);
    out.tag = "max_strict";
    return out;
}

}  // namespace wkam
