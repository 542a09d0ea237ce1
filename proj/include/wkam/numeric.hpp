#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace wkam {

/// Arbitrary-precision rational used by the exact numeric mode.
using Rational = mpq_class;

/// Malformed numeric text, bad files, dimension mismatches.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Accepts ASCII '-' and U+2212 as a leading minus sign.
inline std::string normalize_minus(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else if (text[i] != ' ' && text[i] != '\t') {
            out.push_back(text[i]);
        }
    }
    return out;
}

inline bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

/// Parses "p", "p/q" or a finite decimal "d.ddd[e±x]" exactly.
inline Rational parse_rational(std::string_view raw) {
    const std::string text = normalize_minus(raw);
    if (text.empty()) throw InputError("empty numeric value");
    std::string_view body = text;
    bool negative = false;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw InputError("malformed rational '" + text + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw InputError("zero denominator in '" + text + "'");
        result = Rational(mpz_class(std::string(num), 10), d);
        result.canonicalize();
    } else {
        std::string_view mantissa = body;
        long exponent = 0;
        if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = body.substr(0, e);
            std::string_view ex = body.substr(e + 1);
            bool eneg = false;
            if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
                eneg = ex.front() == '-';
                ex.remove_prefix(1);
            }
            if (!all_digits(ex) || ex.size() > 6) throw InputError("malformed exponent in '" + text + "'");
            exponent = std::stol(std::string(ex));
            if (eneg) exponent = -exponent;
        }
        std::string digits;
        long frac = 0;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            auto ip = mantissa.substr(0, dot);
            auto fp = mantissa.substr(dot + 1);
            if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
                throw InputError("malformed decimal '" + text + "'");
            digits = std::string(ip) + std::string(fp);
            frac = static_cast<long>(fp.size());
        } else {
            if (!all_digits(mantissa)) throw InputError("malformed number '" + text + "'");
            digits = std::string(mantissa);
        }
        mpz_class num(digits, 10);
        const long scale = frac - exponent;
        mpz_class pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale >= 0 ? scale : -scale));
        result = scale >= 0 ? Rational(num, pow10) : Rational(num * pow10);
        result.canonicalize();
    }
    return negative ? Rational(-result) : result;
}

}  // namespace detail

/**
Per-scalar policy: exactness, tolerant comparisons and text conversion.
Float comparisons use the relative-absolute hybrid |a-b| <= eps*max(1,|a|,|b|).
*/
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* mode_name = "exact";

    static bool eq(const Rational& a, const Rational& b, double) { return a == b; }
    static bool le(const Rational& a, const Rational& b, double) { return a <= b; }
    static bool lt(const Rational& a, const Rational& b, double) { return a < b; }
    static bool is_zero(const Rational& a, double) { return sgn(a) == 0; }

    static std::string to_string(const Rational& a) { return a.get_str(); }
    static Rational parse(std::string_view s) { return detail::parse_rational(s); }
    static Rational from_double(double d) {
        if (!std::isfinite(d)) throw InputError("non-finite value");
        return Rational(d);
    }
    static double to_double(const Rational& a) { return a.get_d(); }
    static Rational abs(const Rational& a) { return ::abs(a); }
    static Rational from_ratio(long p, long q) {
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* mode_name = "float";

    static double scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }
    static bool eq(double a, double b, double eps) { return std::abs(a - b) <= eps * scale(a, b); }
    static bool le(double a, double b, double eps) { return a <= b + eps * scale(a, b); }
    static bool lt(double a, double b, double eps) { return a < b - eps * scale(a, b); }
    static bool is_zero(double a, double eps) { return std::abs(a) <= eps; }

    static std::string to_string(double a) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", a);
        return buf;
    }
    static double parse(std::string_view s) {
        Rational r = detail::parse_rational(s);
        return r.get_d();
    }
    static double from_double(double d) {
        if (!std::isfinite(d)) throw InputError("non-finite value");
        return d;
    }
    static double to_double(double a) { return a; }
    static double abs(double a) { return std::abs(a); }
    static double from_ratio(long p, long q) { return static_cast<double>(p) / static_cast<double>(q); }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

}  // namespace wkam
