#pragma once

#include <stdexcept>

#include "critical.hpp"

namespace wkam {

namespace detail {

inline void require_total(bool total, const char* what) {
    if (!total) throw std::invalid_argument(std::string(what) + ": requires a total instance (graph mode rejected)");
}

}  // namespace detail

/**
phi_1(x, y) = inf_{k>=1} c_k(x, y) + k alpha0: the cheapest reduced walk
with at least one step. Since no reduced cycle is negative, walks of at
most n steps suffice, so n-1 relaxation rounds per source are exact.
*/
template <Scalar T>
PotentialTable<T> phi_one(const CostInstance<T>& inst, const CriticalData<T>& crit) {
    const std::size_t n = inst.size();
    PotentialTable<T> out{crit.reduced, TableKind::phi_n, 1, crit.alpha0};
    for (Index x = 0; x < n; ++x) {
        std::vector<Extended<T>> row = crit.reduced.row(x);
        for (std::size_t round = 1; round < n; ++round) {
            std::vector<Extended<T>> next = row;
            for (Index z = 0; z < n; ++z) {
                if (row[z].is_infinite()) continue;
                for (Index y = 0; y < n; ++y) {
                    Extended<T> cand = row[z] + crit.r(z, y);
                    if (cand < next[y]) next[y] = std::move(cand);
                }
            }
            if (next == row) break;
            row = std::move(next);
        }
        out.entries.set_row(x, row);
    }
    return out;
}

/// The Mane potential: phi_1 off the diagonal, zero on it.
template <Scalar T>
PotentialTable<T> mane_potential(const CostInstance<T>& inst, const CriticalData<T>& crit) {
    detail::require_total(inst.total(), "mane_potential");
    PotentialTable<T> out = phi_one(inst, crit);
    for (Index x = 0; x < inst.size(); ++x) out(x, x) = Extended<T>(T(0));
    out.kind = TableKind::phi;
    out.order = 0;
    return out;
}

/// phi_n via phi_{n+1, x} = T^- phi_{n, x} + alpha0, row by row.
template <Scalar T>
PotentialTable<T> phi_n(const CostInstance<T>& inst, const CriticalData<T>& crit, std::size_t n) {
    if (n == 0) throw std::invalid_argument("phi_n: n must be at least 1");
    PotentialTable<T> out = phi_one(inst, crit);
    for (std::size_t k = 1; k < n; ++k)
        for (Index x = 0; x < inst.size(); ++x)
            out.entries.set_row(x, shifted(lax_oleinik_neg(inst, out.row(x)), crit.alpha0).values);
    out.order = n;
    return out;
}

/// F(x) = T^- phi_x(x) + alpha0; vanishes exactly on the projected Aubry set.
template <Scalar T>
ValueFunction<T> jump_F(const CostInstance<T>& inst, const CriticalData<T>& crit, const PotentialTable<T>& phi) {
    ValueFunction<T> out = ValueFunction<T>::constant(inst.size(), T(0), "F");
    for (Index x = 0; x < inst.size(); ++x) out[x] = lax_oleinik_neg(inst, phi.row(x))[x] + Extended<T>(crit.alpha0);
    return out;
}

template <Scalar T>
ValueFunction<T> jump_F(const CostInstance<T>& inst, const CriticalData<T>& crit) {
    return jump_F(inst, crit, mane_potential(inst, crit));
}

/// f(x) = T^+ phi^x(x) - alpha0 with phi^x = -phi(., x); f <= 0.
template <Scalar T>
ValueFunction<T> jump_f(const CostInstance<T>& inst, const CriticalData<T>& crit, const PotentialTable<T>& phi) {
    ValueFunction<T> out = ValueFunction<T>::constant(inst.size(), T(0), "f");
    for (Index x = 0; x < inst.size(); ++x)
        out[x] = lax_oleinik_pos(inst, phi.negated_column(x))[x] - Extended<T>(crit.alpha0);
    return out;
}

template <Scalar T>
ValueFunction<T> jump_f(const CostInstance<T>& inst, const CriticalData<T>& crit) {
    return jump_f(inst, crit, mane_potential(inst, crit));
}

/**
Zero test used for F and f. Float mode scales the tolerance by n*max|c|
since the values are sums along walks of up to n steps.
*/
template <Scalar T>
bool jump_is_zero(const CostInstance<T>& inst, const Extended<T>& v) {
    if (v.is_infinite()) return false;
    if constexpr (is_exact_v<T>) {
        return sgn(v.value()) == 0;
    } else {
        double scale = 1.0;
        for (Index x = 0; x < inst.size(); ++x)
            for (Index y = 0; y < inst.size(); ++y)
                if (inst(x, y).is_finite()) scale = std::max(scale, std::abs(inst(x, y).value()));
        return std::abs(v.value()) <= inst.tolerance * static_cast<double>(inst.size()) * scale;
    }
}

}  // namespace wkam
