#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "extended.hpp"

namespace wkam {

using Index = std::size_t;

/// Dense row-major n x n matrix.
template <class V>
class SquareMatrix {
  public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, const V& fill = V{}) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }

    V& operator()(Index row, Index col) { return data_[row * n_ + col]; }
    const V& operator()(Index row, Index col) const { return data_[row * n_ + col]; }

    std::vector<V> row(Index r) const { return {data_.begin() + r * n_, data_.begin() + (r + 1) * n_}; }
    std::vector<V> column(Index c) const {
        std::vector<V> out;
        out.reserve(n_);
        for (Index r = 0; r < n_; ++r) out.push_back((*this)(r, c));
        return out;
    }
    void set_row(Index r, const std::vector<V>& values) {
        for (Index c = 0; c < n_; ++c) (*this)(r, c) = values[c];
    }

    SquareMatrix transposed() const {
        SquareMatrix t(n_);
        for (Index r = 0; r < n_; ++r)
            for (Index c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<V> data_;
};

/**
Finite point set with its one-step cost matrix.

cost(x, y) is c(x, y), the price of moving from x (row) to y (column).
The numeric mode is carried by T: Rational is the exact mode, double the
float mode with `tolerance` used by every equality test. Entries may be
+inf only in graph mode (total() == false).
*/
template <Scalar T>
struct CostInstance {
    std::vector<std::string> labels;
    SquareMatrix<Extended<T>> cost;
    std::optional<SquareMatrix<T>> metric;
    double tolerance = 1e-9;

    static constexpr bool exact = ScalarTraits<T>::exact;

    CostInstance() = default;
    explicit CostInstance(SquareMatrix<Extended<T>> c, std::vector<std::string> names = {})
        : labels(std::move(names)), cost(std::move(c)) {
        if (labels.empty()) labels = default_labels(cost.size());
        validate();
    }

    std::size_t size() const { return cost.size(); }

    bool total() const {
        for (Index x = 0; x < size(); ++x)
            for (Index y = 0; y < size(); ++y)
                if (cost(x, y).is_infinite()) return false;
        return true;
    }

    Compare<T> compare() const { return Compare<T>{tolerance}; }

    const Extended<T>& operator()(Index x, Index y) const { return cost(x, y); }

    /// Throws std::invalid_argument when the structural invariants do not hold.
    void validate() const {
        const std::size_t n = size();
        if (n == 0) throw std::invalid_argument("instance must have at least one point");
        if (labels.size() != n) throw std::invalid_argument("label count does not match the cost matrix");
        if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
        if (metric) {
            if (metric->size() != n) throw std::invalid_argument("metric dimension does not match the cost matrix");
            const Compare<T> cmp = compare();
            for (Index x = 0; x < n; ++x) {
                if (!cmp.eq((*metric)(x, x), T(0))) throw std::invalid_argument("metric diagonal must be zero");
                for (Index y = 0; y < n; ++y) {
                    if ((*metric)(x, y) < T(0)) throw std::invalid_argument("metric must be nonnegative");
                    if (!cmp.eq((*metric)(x, y), (*metric)(y, x))) throw std::invalid_argument("metric must be symmetric");
                    for (Index z = 0; z < n; ++z)
                        if (!cmp.le((*metric)(x, z), T((*metric)(x, y) + (*metric)(y, z))))
                            throw std::invalid_argument("metric violates the triangle inequality");
                }
            }
        }
    }

    static std::vector<std::string> default_labels(std::size_t n) {
        std::vector<std::string> out;
        out.reserve(n);
        for (Index i = 0; i < n; ++i) out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i));
        return out;
    }

    friend bool operator==(const CostInstance& a, const CostInstance& b) {
        return a.labels == b.labels && a.cost == b.cost && a.metric == b.metric && a.tolerance == b.tolerance;
    }
};

/// u : X -> R u {+inf}, one value per point.
template <Scalar T>
struct ValueFunction {
    std::vector<Extended<T>> values;
    std::string tag;

    ValueFunction() = default;
    explicit ValueFunction(std::vector<Extended<T>> v, std::string t = {}) : values(std::move(v)), tag(std::move(t)) {}
    static ValueFunction constant(std::size_t n, const T& k, std::string t = "constant") {
        return ValueFunction(std::vector<Extended<T>>(n, Extended<T>(k)), std::move(t));
    }

    std::size_t size() const { return values.size(); }
    Extended<T>& operator[](Index i) { return values[i]; }
    const Extended<T>& operator[](Index i) const { return values[i]; }

    bool finite() const {
        for (const auto& v : values)
            if (v.is_infinite()) return false;
        return true;
    }

    /// Value comparison only; provenance tags are ignored.
    friend bool operator==(const ValueFunction& a, const ValueFunction& b) { return a.values == b.values; }
};

template <Scalar T>
ValueFunction<T> shifted(ValueFunction<T> u, const T& k) {
    for (auto& v : u.values) v += Extended<T>(k);
    return u;
}

template <Scalar T>
ValueFunction<T> negated(ValueFunction<T> u) {
    for (auto& v : u.values) v = -v;
    return u;
}

template <Scalar T>
ValueFunction<T> pointwise_min(const ValueFunction<T>& a, const ValueFunction<T>& b) {
    ValueFunction<T> out = a;
    for (Index i = 0; i < a.size(); ++i) out[i] = min(a[i], b[i]);
    return out;
}

/// sum_i w_i u_i; weights are not required to sum to one.
template <Scalar T>
ValueFunction<T> linear_combination(const std::vector<ValueFunction<T>>& fs, const std::vector<T>& weights) {
    if (fs.empty() || fs.size() != weights.size()) throw std::invalid_argument("linear_combination: size mismatch");
    ValueFunction<T> out = ValueFunction<T>::constant(fs.front().size(), T(0), "combination");
    for (Index k = 0; k < fs.size(); ++k)
        for (Index i = 0; i < out.size(); ++i) out[i] += fs[k][i] * weights[k];
    return out;
}

template <Scalar T>
bool approx_equal(const ValueFunction<T>& a, const ValueFunction<T>& b, const Compare<T>& cmp) {
    if (a.size() != b.size()) return false;
    for (Index i = 0; i < a.size(); ++i)
        if (!cmp.eq(a[i], b[i])) return false;
    return true;
}

template <Scalar T>
bool approx_le(const ValueFunction<T>& a, const ValueFunction<T>& b, const Compare<T>& cmp) {
    for (Index i = 0; i < a.size(); ++i)
        if (!cmp.le(a[i], b[i])) return false;
    return true;
}

inline void require_same_size(std::size_t n, std::size_t m, const char* what) {
    if (n != m) throw std::invalid_argument(std::string(what) + ": value function length does not match the instance");
}

}  // namespace wkam
