#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "critical.hpp"

namespace wkam {

// Instance generators ------------------------------------------------------

/// c == k on n points.
template <Scalar T>
CostInstance<T> gen_constant(std::size_t n, const T& k) {
    if (n == 0) throw std::invalid_argument("gen_constant: n must be at least 1");
    return CostInstance<T>(SquareMatrix<Extended<T>>(n, Extended<T>(k)));
}

/// Denominator of the grid random costs are drawn from.
inline constexpr long kRandomGridDenominator = 4;

/**
Uniform costs on the grid lo + j/4 inside [lo, hi], drawn from mt19937_64
(whose output sequence is fixed by the standard), so every seed gives the
same instance on every platform.
*/
template <Scalar T>
CostInstance<T> gen_random(std::size_t n, std::uint64_t seed, long lo, long hi) {
    if (n == 0) throw std::invalid_argument("gen_random: n must be at least 1");
    if (lo > hi) throw std::invalid_argument("gen_random: lo must not exceed hi");
    std::mt19937_64 rng(seed);
    const auto span = static_cast<std::uint64_t>((hi - lo) * kRandomGridDenominator) + 1;
    SquareMatrix<Extended<T>> cost(n);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            const long j = static_cast<long>(rng() % span);
            cost(x, y) = Extended<T>(ScalarTraits<T>::from_ratio(lo * kRandomGridDenominator + j, kRandomGridDenominator));
        }
    return CostInstance<T>(std::move(cost));
}

/// Arc distance between grid points i and j on a circle of circumference 1.
template <Scalar T>
T circle_distance(std::size_t m, Index i, Index j) {
    const long diff = i > j ? static_cast<long>(i - j) : static_cast<long>(j - i);
    const long arc = std::min<long>(diff, static_cast<long>(m) - diff);
    return ScalarTraits<T>::from_ratio(arc, static_cast<long>(m));
}

/**
Discrete Frenkel-Kontorova cost on m equispaced circle points:
c(x, y) = lambda d(x, y)^2 + V(y), with the arc metric attached.
*/
template <Scalar T>
CostInstance<T> gen_fk(std::size_t m, const T& lambda, const std::vector<T>& potential) {
    if (m == 0) throw std::invalid_argument("gen_fk: grid size must be at least 1");
    if (potential.size() != m) throw std::invalid_argument("gen_fk: potential needs one value per grid point");
    if (lambda < T(0)) throw std::invalid_argument("gen_fk: lambda must be nonnegative");
    for (const auto& v : potential)
        if (v < T(0)) throw std::invalid_argument("gen_fk: potential values must be nonnegative");
    SquareMatrix<Extended<T>> cost(m);
    SquareMatrix<T> metric(m);
    for (Index x = 0; x < m; ++x)
        for (Index y = 0; y < m; ++y) {
            const T d = circle_distance<T>(m, x, y);
            metric(x, y) = d;
            cost(x, y) = Extended<T>(T(lambda * d * d + potential[y]));
        }
    std::vector<std::string> labels;
    for (Index i = 0; i < m; ++i) labels.push_back("q" + std::to_string(i));
    CostInstance<T> inst(std::move(cost), std::move(labels));
    inst.metric = std::move(metric);
    inst.validate();
    return inst;
}

/**
Named potential profiles for gen_fk:
  flat            V == 0
  cos             V_i = 1 - cos(2 pi i / m), single zero at 0
  quad            V_i = d(i, 0)^2, single zero at 0
  wells=i;j;...   V_i = min over wells of d(i, w)^2
  v0,v1,...       explicit values
*/
template <Scalar T>
std::vector<T> fk_potential(std::size_t m, const std::string& spec) {
    std::vector<T> v(m, T(0));
    if (spec == "flat") return v;
    if (spec == "cos") {
        for (Index i = 0; i < m; ++i)
            v[i] = i == 0 ? T(0)
                          : ScalarTraits<T>::from_double(1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                                                        static_cast<double>(m)));
        return v;
    }
    auto squared_distance_to = [&](const std::vector<Index>& wells) {
        for (Index i = 0; i < m; ++i) {
            std::optional<T> best;
            for (Index w : wells) {
                const T d = circle_distance<T>(m, i, w);
                const T d2 = d * d;
                if (!best || d2 < *best) best = d2;
            }
            v[i] = *best;
        }
    };
    if (spec == "quad") {
        squared_distance_to({0});
        return v;
    }
    if (spec.rfind("wells=", 0) == 0) {
        std::vector<Index> wells;
        std::stringstream ss(spec.substr(6));
        for (std::string item; std::getline(ss, item, ';');) {
            const Rational w = detail::parse_rational(item);
            if (w.get_den() != 1 || w < 0 || w >= static_cast<long>(m))
                throw InputError("fk potential: well index out of range: " + item);
            wells.push_back(static_cast<Index>(w.get_num().get_ui()));
        }
        if (wells.empty()) throw InputError("fk potential: no wells listed");
        squared_distance_to(wells);
        return v;
    }
    std::stringstream ss(spec);
    std::vector<T> values;
    for (std::string item; std::getline(ss, item, ',');) values.push_back(ScalarTraits<T>::parse(item));
    if (values.size() != m) throw InputError("fk potential: expected " + std::to_string(m) + " values");
    return values;
}

// Metric-space validators ----------------------------------------------------

template <Scalar T>
struct LengthSpaceReport {
    T B;
    T K;
    bool ok = true;
    std::map<std::pair<Index, Index>, std::vector<Index>> witness_chains;
    /// Largest floor(2 B d(x, y) / K + 1) over all pairs.
    std::size_t max_chain_length_bound = 0;
    std::optional<std::pair<Index, Index>> failing_pair;
};

/**
For every pair, the chain with fewest steps among those whose steps are
<= K and whose total length is <= B d(x, y) (layered DP over step count).
ok iff every pair has one within the step bound 2 B d(x, y) / K + 1.
*/
template <Scalar T>
LengthSpaceReport<T> check_length_space(const SquareMatrix<T>& metric, const T& B, const T& K) {
    if (B < T(1)) throw std::invalid_argument("check_length_space: B must be at least 1");
    if (!(T(0) < K)) throw std::invalid_argument("check_length_space: K must be positive");
    const std::size_t n = metric.size();
    LengthSpaceReport<T> rep;
    rep.B = B;
    rep.K = K;
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            const T bound_len = B * metric(x, y);
            const T step_bound = T(2) * B * metric(x, y) / K + T(1);
            const auto bound_steps = static_cast<std::size_t>(std::floor(ScalarTraits<T>::to_double(step_bound) + 1e-12));
            rep.max_chain_length_bound = std::max(rep.max_chain_length_bound, bound_steps);
            if (x == y) {
                rep.witness_chains[{x, y}] = {x};
                continue;
            }
            // layers[k][v]: shortest total length reaching v in at most k admissible steps.
            std::vector<std::vector<std::optional<T>>> layers{std::vector<std::optional<T>>(n)};
            std::vector<std::vector<std::optional<Index>>> parent{std::vector<std::optional<Index>>(n)};
            layers[0][x] = T(0);
            std::optional<std::size_t> found;
            for (std::size_t k = 1; k < n && !found; ++k) {
                layers.push_back(layers[k - 1]);
                parent.push_back(std::vector<std::optional<Index>>(n));
                for (Index u = 0; u < n; ++u) {
                    if (!layers[k - 1][u]) continue;
                    for (Index v = 0; v < n; ++v) {
                        if (u == v || K < metric(u, v)) continue;
                        const T cand = *layers[k - 1][u] + metric(u, v);
                        if (!layers[k][v] || cand < *layers[k][v]) {
                            layers[k][v] = cand;
                            parent[k][v] = u;
                        }
                    }
                }
                if (layers[k][y] && !(bound_len < *layers[k][y])) found = k;
            }
            if (!found) {
                rep.ok = false;
                if (!rep.failing_pair) rep.failing_pair = {x, y};
                continue;
            }
            std::vector<Index> chain{y};
            Index v = y;
            for (std::size_t k = *found; k > 0; --k) {
                if (parent[k][v]) {
                    v = *parent[k][v];
                    chain.push_back(v);
                }
            }
            std::reverse(chain.begin(), chain.end());
            if (chain.front() != x || chain.size() - 1 > bound_steps) {
                rep.ok = false;
                if (!rep.failing_pair) rep.failing_pair = {x, y};
            }
            rep.witness_chains[{x, y}] = std::move(chain);
        }
    return rep;
}

template <Scalar T>
struct GrowthConstants {
    std::vector<std::pair<T, T>> C;  // (k, C(k)) with C(k) = max (k d - c)
    std::vector<std::pair<T, T>> A;  // (R, A(R)) with A(R) = max { c : d <= R }
};

namespace detail {

template <Scalar T>
const SquareMatrix<T>& require_metric(const CostInstance<T>& inst, const char* what) {
    if (!inst.metric) throw std::invalid_argument(std::string(what) + ": instance has no metric");
    if (!inst.total()) throw std::invalid_argument(std::string(what) + ": requires a total instance");
    return *inst.metric;
}

}  // namespace detail

/// Tight super-linearity constant: the least C with c >= k d - C.
template <Scalar T>
T superlinearity_constant(const CostInstance<T>& inst, const T& k) {
    const auto& d = detail::require_metric(inst, "superlinearity_constant");
    std::optional<T> best;
    for (Index x = 0; x < inst.size(); ++x)
        for (Index y = 0; y < inst.size(); ++y) {
            T v = k * d(x, y) - inst(x, y).value();
            if (!best || *best < v) best = v;
        }
    return *best;
}

/// Tight boundedness constant: max cost over pairs within distance R.
template <Scalar T>
T boundedness_constant(const CostInstance<T>& inst, const T& R) {
    const auto& d = detail::require_metric(inst, "boundedness_constant");
    std::optional<T> best;
    for (Index x = 0; x < inst.size(); ++x)
        for (Index y = 0; y < inst.size(); ++y) {
            if (R < d(x, y)) continue;
            const T& v = inst(x, y).value();
            if (!best || *best < v) best = v;
        }
    if (!best) throw std::invalid_argument("boundedness_constant: R must be nonnegative");
    return *best;
}

template <Scalar T>
GrowthConstants<T> growth_constants(const CostInstance<T>& inst, const std::vector<T>& ks, const std::vector<T>& radii) {
    detail::require_metric(inst, "growth_constants");
    GrowthConstants<T> out;
    for (const auto& k : ks) out.C.emplace_back(k, superlinearity_constant(inst, k));
    for (const auto& r : radii) out.A.emplace_back(r, boundedness_constant(inst, r));
    return out;
}

struct LipschitzResult {
    bool ok = true;
    std::optional<std::pair<Index, Index>> witness;
    explicit operator bool() const { return ok; }
};

/// |u(x) - u(y)| <= k d(x, y) + b for all pairs.
template <Scalar T>
LipschitzResult lipschitz_large_check(const CostInstance<T>& inst, const ValueFunction<T>& u, const T& k, const T& b) {
    const auto& d = detail::require_metric(inst, "lipschitz_large_check");
    require_same_size(inst.size(), u.size(), "lipschitz_large_check");
    const Compare<T> cmp = inst.compare();
    for (Index x = 0; x < inst.size(); ++x)
        for (Index y = 0; y < inst.size(); ++y) {
            const T gap = ScalarTraits<T>::abs(T(u[x].value() - u[y].value()));
            if (!cmp.le(gap, T(k * d(x, y) + b))) return {false, std::pair{x, y}};
        }
    return {};
}

/// Constants (k, b) making every alpha-dominated function Lipschitz in the large
/// on a B-length space at scale K: k = 2 (A(K) + alpha) B / K, b = A(K) + alpha.
template <Scalar T>
std::pair<T, T> lipschitz_constants(const CostInstance<T>& inst, const T& alpha, const T& B, const T& K) {
    const T base = boundedness_constant(inst, K) + alpha;
    return {T(T(2) * base * B / K), base};
}

struct AprioriResult {
    bool ok = true;
    std::optional<std::pair<Index, Index>> witness;  // (x, minimiser y)
};

/**
For u in Lip(k, b), x0 any point and x with d(x0, x) <= r, every minimiser
y of u(y) + c(y, x) lies within
  D = (A(r) + 2 k r + C(2k) + b) / k
of x0 (C(k) being the least constant with c >= k d - C).
*/
template <Scalar T>
AprioriResult apriori_radius_check(const CostInstance<T>& inst, const ValueFunction<T>& u, const T& k, const T& b,
                                   const T& r) {
    const auto& d = detail::require_metric(inst, "apriori_radius_check");
    if (!(T(0) < k)) throw std::invalid_argument("apriori_radius_check: k must be positive");
    const T radius = (boundedness_constant(inst, r) + T(2) * k * r + superlinearity_constant(inst, T(2 * k)) + b) / k;
    const Compare<T> cmp = inst.compare();
    const auto image = lax_oleinik_neg(inst, u);
    for (Index x0 = 0; x0 < inst.size(); ++x0)
        for (Index x = 0; x < inst.size(); ++x) {
            if (r < d(x0, x)) continue;
            for (Index y = 0; y < inst.size(); ++y)
                if (cmp.eq(u[y] + inst(y, x), image[x]) && !cmp.le(d(x0, y), radius)) return {false, std::pair{x, y}};
        }
    return {};
}

}  // namespace wkam
