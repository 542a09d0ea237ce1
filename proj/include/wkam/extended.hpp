#pragma once

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "numeric.hpp"

namespace wkam {

/// Raised when an operation would produce -inf or an undefined inf - inf.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/**
Element of R u {+inf}, the codomain of costs and potentials.

+inf is absorbing for addition and neutral for min. -inf cannot be
represented: negating +inf, or subtracting +inf from anything, throws
DomainError.
*/
template <Scalar T>
class Extended {
  public:
    Extended() : value_{}, infinite_(false) {}
    Extended(T v) : value_(std::move(v)), infinite_(false) {}  // NOLINT: implicit by intent
    template <class I>
        requires std::is_integral_v<I>
    Extended(I v) : value_(static_cast<long>(v)), infinite_(false) {}  // NOLINT

    static Extended infinity() {
        Extended e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    const T& value() const {
        if (infinite_) throw DomainError("finite value requested from +inf");
        return value_;
    }

    Extended& operator+=(const Extended& o) {
        if (infinite_ || o.infinite_) {
            infinite_ = true;
            value_ = T{};
        } else {
            value_ += o.value_;
        }
        return *this;
    }
    Extended& operator-=(const Extended& o) {
        if (o.infinite_) throw DomainError("subtracting +inf");
        if (!infinite_) value_ -= o.value_;
        return *this;
    }

    friend Extended operator+(Extended a, const Extended& b) { return a += b; }
    friend Extended operator-(Extended a, const Extended& b) { return a -= b; }
    friend Extended operator-(const Extended& a) {
        if (a.infinite_) throw DomainError("negating +inf");
        return Extended(T(-a.value_));
    }
    friend Extended operator*(const Extended& a, const T& k) {
        if (a.infinite_) {
            if (k < T(0)) throw DomainError("scaling +inf by a negative factor");
            if (k == T(0)) return Extended(T(0));
            return a;
        }
        return Extended(T(a.value_ * k));
    }

    friend bool operator==(const Extended& a, const Extended& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
        if (a.infinite_ || b.infinite_) {
            if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
            return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (b.value_ < a.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const { return infinite_ ? std::string("inf") : ScalarTraits<T>::to_string(value_); }

    friend std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.to_string(); }

  private:
    T value_;
    bool infinite_;
};

template <Scalar T>
Extended<T> min(const Extended<T>& a, const Extended<T>& b) {
    return b < a ? b : a;
}

template <Scalar T>
Extended<T> max(const Extended<T>& a, const Extended<T>& b) {
    return a < b ? b : a;
}

/**
Tolerance-aware comparisons bound to one instance's numeric mode. In exact
mode the tolerance is ignored and every test is an exact comparison.
*/
template <Scalar T>
struct Compare {
    double eps = 1e-9;

    bool eq(const Extended<T>& a, const Extended<T>& b) const {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
        return ScalarTraits<T>::eq(a.value(), b.value(), eps);
    }
    bool le(const Extended<T>& a, const Extended<T>& b) const {
        if (b.is_infinite()) return true;
        if (a.is_infinite()) return false;
        return ScalarTraits<T>::le(a.value(), b.value(), eps);
    }
    bool lt(const Extended<T>& a, const Extended<T>& b) const {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return ScalarTraits<T>::lt(a.value(), b.value(), eps);
    }
    bool ge(const Extended<T>& a, const Extended<T>& b) const { return le(b, a); }
    bool gt(const Extended<T>& a, const Extended<T>& b) const { return lt(b, a); }
};

}  // namespace wkam
