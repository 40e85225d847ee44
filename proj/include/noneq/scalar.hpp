#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "noneq/errors.hpp"

namespace noneq {

// Arbitrary-precision rational scalar. Thin strong type over
// boost::multiprecision::cpp_rational; the constrained constructors keep
// Eigen's expression templates out of boost's converting-constructor
// overload sets.
class Rational {
public:
    using rep = boost::multiprecision::cpp_rational;
    using int_rep = boost::multiprecision::cpp_int;

    Rational() = default;
    template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    Rational(I v) : v_(v) {}
    explicit Rational(rep v) : v_(std::move(v)) {}
    explicit Rational(const int_rep& num, const int_rep& den) : v_(rep(num) / rep(den)) {
        if (den == 0) throw Error("rational with zero denominator");
    }
    Rational(long long num, long long den) : Rational(int_rep(num), int_rep(den)) {}

    const rep& value() const { return v_; }
    int_rep numerator() const { return boost::multiprecision::numerator(v_); }
    int_rep denominator() const { return boost::multiprecision::denominator(v_); }
    double to_double() const { return v_.template convert_to<double>(); }
    std::string str() const { return v_.str(); }
    bool is_zero() const { return v_.is_zero(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.v_.is_zero()) throw Error("rational division by zero");
        return Rational(a.v_ / b.v_);
    }
    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend Rational abs(const Rational& a) { return a.v_ < 0 ? Rational(-a.v_) : a; }
    friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.v_; }

private:
    rep v_;
};

namespace detail {

// Signed decimal integer accumulated digit by digit. The cpp_int string
// constructor treats a leading zero as a C-style octal prefix, so it is
// deliberately not used here.
inline Rational::int_rep parse_decimal_int(std::string_view s, bool& ok) {
    ok = false;
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = (s[pos] == '-');
        ++pos;
    }
    if (pos >= s.size()) return 0;
    Rational::int_rep value = 0;
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9') return 0;
        value = value * 10 + (s[pos] - '0');
    }
    ok = true;
    return negative ? Rational::int_rep(-value) : value;
}

}  // namespace detail

// Parses "p/q", integer, or decimal text ("-3", "2/7", "0.125", "2.5e-3")
// into an exact rational.
inline Rational parse_rational(std::string_view text) {
    using int_rep = Rational::int_rep;
    auto fail = [&] { throw ParseError("cannot parse rational literal '" + std::string(text) + "'"); };

    std::string s(text);
    if (s.empty()) fail();

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        bool num_ok = false, den_ok = false;
        int_rep num = detail::parse_decimal_int(s.substr(0, slash), num_ok);
        int_rep den = detail::parse_decimal_int(s.substr(slash + 1), den_ok);
        if (!num_ok || !den_ok || den == 0) fail();
        return Rational(num, den);
    }

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = (s[pos] == '-');
        ++pos;
    }

    int_rep mantissa = 0;
    long frac_digits = 0, exponent = 0;
    bool seen_digit = false, seen_dot = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.') {
            if (seen_dot) fail();
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            try {
                exponent = std::stol(s.substr(pos + 1));
            } catch (const std::exception&) {
                fail();
            }
            pos = s.size() - 1;
        } else {
            fail();
        }
    }
    if (!seen_digit) fail();

    if (negative) mantissa = -mantissa;
    long pow10 = exponent - frac_digits;
    int_rep scale = 1;
    for (long t = 0; t < (pow10 < 0 ? -pow10 : pow10); ++t) scale *= 10;
    return pow10 >= 0 ? Rational(mantissa * scale, 1) : Rational(mantissa, scale);
}

// ---------------------------------------------------------------------------
// Scalar mode traits: double carries tolerances, Rational is exact.
// ---------------------------------------------------------------------------

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double to_double(double x) { return x; }
    static double ratio(long long num, long long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static double to_double(const Rational& x) { return x.to_double(); }
    static Rational ratio(long long num, long long den) { return Rational(num, den); }
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

// base * scale in float mode, exact zero in rational mode.
template <class T>
T scaled_tol(double base, const T& scale);

template <>
inline double scaled_tol<double>(double base, const double& scale) {
    return base * scale;
}

template <>
inline Rational scaled_tol<Rational>(double, const Rational&) {
    return Rational(0);
}

template <class T>
T ratio_of(long long num, long long den) {
    return scalar_traits<T>::ratio(num, den);
}

template <class T>
double to_double(const T& x) {
    return scalar_traits<T>::to_double(x);
}

}  // namespace noneq

namespace Eigen {

template <>
struct NumTraits<noneq::Rational> : GenericNumTraits<noneq::Rational> {
    typedef noneq::Rational Real;
    typedef noneq::Rational NonInteger;
    typedef noneq::Rational Nested;
    typedef noneq::Rational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
