#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "instance.hpp"

namespace wkam {

enum class TableKind { phi, phi_n, c_n, barrier };

inline const char* to_string(TableKind k) {
    switch (k) {
        case TableKind::phi: return "phi";
        case TableKind::phi_n: return "phi_n";
        case TableKind::c_n: return "c_n";
        case TableKind::barrier: return "barrier";
    }
    return "?";
}

/// Matrix-valued potential with the index it was built for (n of c_n / phi_n).
template <Scalar T>
struct PotentialTable {
    SquareMatrix<Extended<T>> entries;
    TableKind kind = TableKind::c_n;
    std::size_t order = 0;
    std::optional<T> alpha0;

    std::size_t size() const { return entries.size(); }
    const Extended<T>& operator()(Index x, Index y) const { return entries(x, y); }
    Extended<T>& operator()(Index x, Index y) { return entries(x, y); }

    /// Row x as a value function: y -> table(x, y).
    ValueFunction<T> row(Index x) const { return ValueFunction<T>(entries.row(x)); }
    /// Negated column x: y -> -table(y, x).
    ValueFunction<T> negated_column(Index x) const { return negated(ValueFunction<T>(entries.column(x))); }
};

/// (A (x) B)(x, y) = min_z A(x, z) + B(z, y), ties irrelevant for the value.
template <Scalar T>
SquareMatrix<Extended<T>> min_plus_product(const SquareMatrix<Extended<T>>& a, const SquareMatrix<Extended<T>>& b) {
    const std::size_t n = a.size();
    SquareMatrix<Extended<T>> out(n, Extended<T>::infinity());
    for (Index x = 0; x < n; ++x)
        for (Index z = 0; z < n; ++z) {
            const auto& axz = a(x, z);
            if (axz.is_infinite()) continue;
            for (Index y = 0; y < n; ++y) {
                Extended<T> cand = axz + b(z, y);
                if (cand < out(x, y)) out(x, y) = std::move(cand);
            }
        }
    return out;
}

/// T^- u(x) = min_y u(y) + c(y, x).
template <Scalar T>
ValueFunction<T> lax_oleinik_neg(const CostInstance<T>& inst, const ValueFunction<T>& u) {
    const std::size_t n = inst.size();
    if (n == 0) throw std::invalid_argument("lax_oleinik_neg: empty instance");
    require_same_size(n, u.size(), "lax_oleinik_neg");
    ValueFunction<T> out(std::vector<Extended<T>>(n, Extended<T>::infinity()), "T-(" + u.tag + ")");
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            Extended<T> cand = u[y] + inst(y, x);
            if (cand < out[x]) out[x] = std::move(cand);
        }
    return out;
}

/// The cost with its arguments swapped: cbar(x, y) = c(y, x).
template <Scalar T>
CostInstance<T> reverse_cost(const CostInstance<T>& inst) {
    CostInstance<T> out = inst;
    out.cost = inst.cost.transposed();
    return out;
}

/// T^+ u(x) = max_y u(y) - c(x, y), evaluated as -T^-_{cbar}(-u).
template <Scalar T>
ValueFunction<T> lax_oleinik_pos(const CostInstance<T>& inst, const ValueFunction<T>& u) {
    if (inst.size() == 0) throw std::invalid_argument("lax_oleinik_pos: empty instance");
    ValueFunction<T> out = negated(lax_oleinik_neg(reverse_cost(inst), negated(u)));
    out.tag = "T+(" + u.tag + ")";
    return out;
}

/// k-fold applications of T^- followed by the normalisation + k*alpha.
template <Scalar T>
ValueFunction<T> lax_oleinik_neg_iter(const CostInstance<T>& inst, ValueFunction<T> u, std::size_t k, const T& alpha) {
    for (std::size_t i = 0; i < k; ++i) u = shifted(lax_oleinik_neg(inst, u), alpha);
    return u;
}

/// k-fold T^+ followed by - k*alpha.
template <Scalar T>
ValueFunction<T> lax_oleinik_pos_iter(const CostInstance<T>& inst, ValueFunction<T> u, std::size_t k, const T& alpha) {
    for (std::size_t i = 0; i < k; ++i) u = shifted(lax_oleinik_pos(inst, u), T(-alpha));
    return u;
}

/**
c_n(x, y): cheapest chain with exactly n steps from x to y, as the n-th
min-plus power of the cost matrix. c_1 is the cost itself.
*/
template <Scalar T>
PotentialTable<T> cost_power(const CostInstance<T>& inst, std::size_t n) {
    if (n == 0) throw std::invalid_argument("cost_power: n must be at least 1");
    PotentialTable<T> out{inst.cost, TableKind::c_n, 1, std::nullopt};
    for (std::size_t k = 2; k <= n; ++k) out.entries = min_plus_product(out.entries, inst.cost);
    out.order = n;
    return out;
}

}  // namespace wkam
