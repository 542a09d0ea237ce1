#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <wkam/wkam.hpp>

namespace wkam::testing {

using Q = Rational;
using EQ = Extended<Q>;

inline Q q(const std::string& s) { return ScalarTraits<Q>::parse(s); }
inline Q ratio(long p, long d) { return ScalarTraits<Q>::from_ratio(p, d); }

/// Rows of rational strings; "inf" gives +inf.
template <Scalar T = Q>
SquareMatrix<Extended<T>> matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
    SquareMatrix<Extended<T>> m(rows.size());
    Index r = 0;
    for (const auto& row : rows) {
        Index c = 0;
        for (const char* v : row) {
            m(r, c) = std::string(v) == "inf" ? Extended<T>::infinity() : Extended<T>(ScalarTraits<T>::parse(v));
            ++c;
        }
        ++r;
    }
    return m;
}

template <Scalar T = Q>
ValueFunction<T> fn(std::initializer_list<const char*> vals) {
    std::vector<Extended<T>> v;
    for (const char* s : vals) v.emplace_back(ScalarTraits<T>::parse(s));
    return ValueFunction<T>(std::move(v));
}

/// c = [[2, 0], [1, 3]]: alpha0 = -1/2 through the 2-cycle (a, b).
template <Scalar T = Q>
CostInstance<T> t2() {
    return CostInstance<T>(matrix<T>({{"2", "0"}, {"1", "3"}}));
}

/// c = [[1, 0, 9], [0, 9, 9], [9, 9, 9]]: zero cycle (a, b), c outside the Aubry set.
template <Scalar T = Q>
CostInstance<T> t3() {
    return CostInstance<T>(matrix<T>({{"1", "0", "9"}, {"0", "9", "9"}, {"9", "9", "9"}}));
}

inline std::vector<CostInstance<Q>> random_instances(std::size_t count, std::size_t max_n, std::uint64_t seed0 = 1) {
    std::vector<CostInstance<Q>> out;
    for (std::size_t s = 0; s < count; ++s) out.push_back(gen_random<Q>(1 + s % max_n, seed0 + s, -5, 5));
    return out;
}

}  // namespace wkam::testing
