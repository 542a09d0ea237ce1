#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "potential.hpp"

namespace wkam {

/// A fixed-point iteration that did not settle within its cap.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Sign { negative, positive };

/// Peierls barrier h with the number of phi_n steps needed to reach it.
template <Scalar T>
struct BarrierData {
    PotentialTable<T> h;
    bool finite = true;
    /// Smallest k with phi_k == h (row-wise maximum).
    std::size_t iterations_to_fix = 1;
};

/// Projected Aubry set, edge Aubry set and the jump function F.
struct AubryData {
    std::vector<Index> vertices;
    std::set<std::pair<Index, Index>> edges;

    bool contains(Index x) const { return std::binary_search(vertices.begin(), vertices.end(), x); }
    friend bool operator==(const AubryData& a, const AubryData& b) {
        return a.vertices == b.vertices && a.edges == b.edges;
    }
};

template <Scalar T>
struct AubryResult {
    AubryData sets;
    ValueFunction<T> jumps;
};

/// Result of a monotone fixed-point iteration and the steps it took.
template <Scalar T>
struct Stabilized {
    ValueFunction<T> value;
    std::size_t steps = 0;
};

namespace detail {

/// Exact mode stops on the first unchanged step; float mode on a change below
/// tolerance with a 4n^2 cap.
template <Scalar T>
std::size_t iteration_cap(std::size_t n) {
    if constexpr (is_exact_v<T>) return 1'000'000;
    return std::max<std::size_t>(4 * n * n, 4);
}

template <Scalar T, class Step>
Stabilized<T> stabilize(const CostInstance<T>& inst, ValueFunction<T> v, Step step, const char* what) {
    const Compare<T> cmp = inst.compare();
    const std::size_t cap = iteration_cap<T>(inst.size());
    for (std::size_t k = 0; k <= cap; ++k) {
        ValueFunction<T> next = step(v);
        const bool same = is_exact_v<T> ? next == v : approx_equal(next, v, cmp);
        if (same) return {std::move(v), k};
        v = std::move(next);
    }
    throw ConvergenceError(std::string(what) + ": no fixed point within " + std::to_string(cap) + " iterations");
}

}  // namespace detail

/**
Row x of h is the limit of the nondecreasing orbit phi_{n,x} of
v -> T^- v + alpha0 started at phi_{1,x}.
*/
template <Scalar T>
BarrierData<T> peierls_barrier(const CostInstance<T>& inst, const CriticalData<T>& crit) {
    detail::require_total(inst.total(), "peierls_barrier");
    const PotentialTable<T> phi1 = phi_one(inst, crit);
    BarrierData<T> out;
    out.h = phi1;
    out.h.kind = TableKind::barrier;
    out.h.order = 0;
    for (Index x = 0; x < inst.size(); ++x) {
        auto fixed = detail::stabilize(
            inst, phi1.row(x), [&](const ValueFunction<T>& v) { return shifted(lax_oleinik_neg(inst, v), crit.alpha0); },
            "peierls_barrier");
        out.iterations_to_fix = std::max(out.iterations_to_fix, fixed.steps + 1);
        out.h.entries.set_row(x, fixed.value.values);
    }
    out.finite = true;
    return out;
}

/// h(x, y) = min_{a in A} phi_1(x, a) + phi_1(a, y).
template <Scalar T>
PotentialTable<T> barrier_closed_form(const PotentialTable<T>& phi1, const std::vector<Index>& aubry_vertices) {
    const std::size_t n = phi1.size();
    PotentialTable<T> out{SquareMatrix<Extended<T>>(n, Extended<T>::infinity()), TableKind::barrier, 0, phi1.alpha0};
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            for (Index a : aubry_vertices) out(x, y) = min(out(x, y), phi1(x, a) + phi1(a, y));
    return out;
}

/**
A = {x : h(x, x) = 0}; an ordered pair (x, y) is an Aubry edge iff
c(x, y) + alpha0 + h(y, x) = 0.
*/
template <Scalar T>
AubryResult<T> aubry(const CostInstance<T>& inst, const CriticalData<T>& crit, const BarrierData<T>& bar) {
    const Compare<T> cmp = inst.compare();
    const Extended<T> zero(T(0));
    AubryResult<T> out;
    for (Index x = 0; x < inst.size(); ++x)
        if (cmp.eq(bar.h(x, x), zero)) out.sets.vertices.push_back(x);
    for (Index x = 0; x < inst.size(); ++x)
        for (Index y = 0; y < inst.size(); ++y)
            if (cmp.eq(crit.r(x, y) + bar.h(y, x), zero)) out.sets.edges.insert({x, y});
    out.jumps = jump_F(inst, crit);
    return out;
}

/// h_x = h(x, .), a negative weak KAM solution.
template <Scalar T>
ValueFunction<T> weak_kam_neg(const BarrierData<T>& bar, Index x) {
    if (!bar.finite) throw std::invalid_argument("weak_kam_neg: barrier is not finite");
    ValueFunction<T> out = bar.h.row(x);
    out.tag = "h_x";
    return out;
}

/// h^x = -h(., x), a positive weak KAM solution.
template <Scalar T>
ValueFunction<T> weak_kam_pos(const BarrierData<T>& bar, Index x) {
    if (!bar.finite) throw std::invalid_argument("weak_kam_pos: barrier is not finite");
    ValueFunction<T> out = bar.h.negated_column(x);
    out.tag = "h^x";
    return out;
}

/// u = T^- u + alpha0 (negative) or u = T^+ u - alpha0 (positive).
template <Scalar T>
bool is_weak_kam(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u, Sign sign) {
    require_same_size(inst.size(), u.size(), "is_weak_kam");
    const ValueFunction<T> image = sign == Sign::negative ? shifted(lax_oleinik_neg(inst, u), crit.alpha0)
                                                          : shifted(lax_oleinik_pos(inst, u), T(-crit.alpha0));
    return approx_equal(image, u, inst.compare());
}

namespace detail {

template <Scalar T>
void require_dominated(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u, const char* what) {
    if (!is_dominated(inst, u, crit.alpha0)) throw std::invalid_argument(std::string(what) + ": u is not critically dominated");
}

}  // namespace detail

/// u_- = lim T^{-n} u + n alpha0 (nondecreasing), with the steps to stabilise.
template <Scalar T>
Stabilized<T> u_minus_limit(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u) {
    detail::require_dominated(inst, crit, u, "u_minus");
    auto out = detail::stabilize(
        inst, u, [&](const ValueFunction<T>& v) { return shifted(lax_oleinik_neg(inst, v), crit.alpha0); }, "u_minus");
    out.value.tag = "u_-";
    return out;
}

/// u_+ = lim T^{+n} u - n alpha0 (nonincreasing).
template <Scalar T>
Stabilized<T> u_plus_limit(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u) {
    detail::require_dominated(inst, crit, u, "u_plus");
    auto out = detail::stabilize(
        inst, u, [&](const ValueFunction<T>& v) { return shifted(lax_oleinik_pos(inst, v), T(-crit.alpha0)); }, "u_plus");
    out.value.tag = "u_+";
    return out;
}

template <Scalar T>
ValueFunction<T> u_minus(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u) {
    return u_minus_limit(inst, crit, u).value;
}

template <Scalar T>
ValueFunction<T> u_plus(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u) {
    return u_plus_limit(inst, crit, u).value;
}

template <Scalar T>
struct ConjugateReport {
    ValueFunction<T> u_m, u_mp, u_mpm, u_mpmp;
    bool idempotent = false;         // u_{-+} == u_{-+-+}
    bool minus_plus_above = false;   // T^{-n} T^{+n} u >= u, n = 1..3
    bool plus_minus_below = false;   // T^{+n} T^{-n} u <= u, n = 1..3
    bool operator_idempotent = false;  // (T^- T^+)^2 u == T^- T^+ u

    bool ok() const { return idempotent && minus_plus_above && plus_minus_below && operator_idempotent; }
};

/// The u_-, u_{-+}, u_{-+-}, u_{-+-+} chain and the conjugate-operator identities on u.
template <Scalar T>
ConjugateReport<T> conjugate_check(const CostInstance<T>& inst, const CriticalData<T>& crit, const ValueFunction<T>& u) {
    const Compare<T> cmp = inst.compare();
    ConjugateReport<T> rep;
    rep.u_m = u_minus(inst, crit, u);
    rep.u_mp = u_plus(inst, crit, rep.u_m);
    rep.u_mpm = u_minus(inst, crit, rep.u_mp);
    rep.u_mpmp = u_plus(inst, crit, rep.u_mpm);
    rep.idempotent = approx_equal(rep.u_mp, rep.u_mpmp, cmp);

    rep.minus_plus_above = rep.plus_minus_below = true;
    for (std::size_t k = 1; k <= 3; ++k) {
        ValueFunction<T> up = u, down = u;
        for (std::size_t i = 0; i < k; ++i) up = lax_oleinik_pos(inst, up);
        for (std::size_t i = 0; i < k; ++i) up = lax_oleinik_neg(inst, up);
        for (std::size_t i = 0; i < k; ++i) down = lax_oleinik_neg(inst, down);
        for (std::size_t i = 0; i < k; ++i) down = lax_oleinik_pos(inst, down);
        rep.minus_plus_above = rep.minus_plus_above && approx_le(u, up, cmp);
        rep.plus_minus_below = rep.plus_minus_below && approx_le(down, u, cmp);
    }
    auto mp = [&](const ValueFunction<T>& v) { return lax_oleinik_neg(inst, lax_oleinik_pos(inst, v)); };
    const ValueFunction<T> once = mp(u);
    rep.operator_idempotent = approx_equal(mp(once), once, cmp);
    return rep;
}

/// Pointwise minimum of negative weak KAM solutions, itself a solution.
template <Scalar T>
ValueFunction<T> inf_solutions(const CostInstance<T>& inst, const CriticalData<T>& crit,
                               const std::vector<ValueFunction<T>>& solutions) {
    if (solutions.empty()) throw std::invalid_argument("inf_solutions: empty list");
    ValueFunction<T> out = solutions.front();
    for (const auto& s : solutions) {
        if (!is_weak_kam(inst, crit, s, Sign::negative))
            throw std::invalid_argument("inf_solutions: input is not a negative weak KAM solution");
        out = pointwise_min(out, s);
    }
    out.tag = "inf";
    if (!is_weak_kam(inst, crit, out, Sign::negative)) throw std::logic_error("inf_solutions: infimum is not a solution");
    return out;
}

template <Scalar T>
struct RepresentationResult {
    SquareMatrix<Extended<T>> sup;  // S(x, y)
    bool bounded = true;            // S <= h entrywise
};

/**
S(x, y) = max_{0<=n,m<=N} T^{-n} u(y) - T^{+m} u(x) + (n+m) alpha0, which
never exceeds h(x, y) for a dominated u.
*/
template <Scalar T>
RepresentationResult<T> representation_check(const CostInstance<T>& inst, const CriticalData<T>& crit,
                                             const BarrierData<T>& bar, const ValueFunction<T>& u, std::size_t horizon) {
    if (horizon == 0) throw std::invalid_argument("representation_check: N must be at least 1");
    detail::require_dominated(inst, crit, u, "representation_check");
    const std::size_t n = inst.size();
    std::vector<ValueFunction<T>> forward{u}, backward{u};  // already normalised by k alpha0
    for (std::size_t k = 1; k <= horizon; ++k) {
        forward.push_back(shifted(lax_oleinik_neg(inst, forward.back()), crit.alpha0));
        backward.push_back(shifted(lax_oleinik_pos(inst, backward.back()), T(-crit.alpha0)));
    }
    RepresentationResult<T> out{SquareMatrix<Extended<T>>(n), true};
    const Compare<T> cmp = inst.compare();
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            std::optional<Extended<T>> best;
            for (const auto& fw : forward)
                for (const auto& bw : backward) {
                    Extended<T> s = fw[y] - bw[x];
                    if (!best || *best < s) best = s;
                }
            out.sup(x, y) = *best;
            if (!cmp.le(*best, bar.h(x, y))) out.bounded = false;
        }
    return out;
}

/// Entrywise max of S over u in {phi_{1,x}}; equals h once N >= iterations_to_fix.
template <Scalar T>
SquareMatrix<Extended<T>> representation_attainment(const CostInstance<T>& inst, const CriticalData<T>& crit,
                                                    const BarrierData<T>& bar, std::size_t horizon) {
    const PotentialTable<T> phi1 = phi_one(inst, crit);
    SquareMatrix<Extended<T>> best;
    for (Index x = 0; x < inst.size(); ++x) {
        auto s = representation_check(inst, crit, bar, phi1.row(x), horizon).sup;
        if (x == 0) {
            best = s;
            continue;
        }
        for (Index a = 0; a < inst.size(); ++a)
            for (Index b = 0; b < inst.size(); ++b) best(a, b) = max(best(a, b), s(a, b));
    }
    return best;
}

/// h(x,y) = min_z h(x,z) + c_n(z,y) + n alpha0 = min_z c_n(x,z) + n alpha0 + h(z,y).
template <Scalar T>
bool min_formula_check(const CostInstance<T>& inst, const CriticalData<T>& crit, const BarrierData<T>& bar, std::size_t n) {
    if (n == 0) throw std::invalid_argument("min_formula_check: n must be at least 1");
    const auto cn = cost_power(inst, n);
    const Extended<T> shift(T(crit.alpha0 * T(static_cast<long>(n))));
    const Compare<T> cmp = inst.compare();
    for (Index x = 0; x < inst.size(); ++x)
        for (Index y = 0; y < inst.size(); ++y) {
            Extended<T> left = Extended<T>::infinity(), right = Extended<T>::infinity();
            for (Index z = 0; z < inst.size(); ++z) {
                left = min(left, bar.h(x, z) + cn(z, y) + shift);
                right = min(right, cn(x, z) + shift + bar.h(z, y));
            }
            if (!cmp.eq(left, bar.h(x, y)) || !cmp.eq(right, bar.h(x, y))) return false;
        }
    return true;
}

}  // namespace wkam
