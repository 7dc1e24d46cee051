#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "sturmjsr/errors.hpp"

namespace sturmjsr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline int sign(double x) { return (x > 0) - (x < 0); }
inline int sign(const Rational& x) { return x.sign(); }

inline std::string to_string(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw error(errc::invalid_argument, "non-finite number");
    if (x == 0.0) return Rational(0);
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    // 53 significant bits fit in int64 after scaling by 2^53.
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational r(scaled);
    const BigInt power = BigInt(1) << std::abs(exponent);
    return exponent >= 0 ? r * Rational(power) : r / Rational(power);
}

namespace detail {

inline BigInt parse_integer(std::string_view s, bool allow_sign) {
    if (s.empty()) throw error(errc::parse_error, "empty number");
    bool negative = false;
    if (allow_sign && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw error(errc::parse_error, "missing digits");
    BigInt value = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw error(errc::parse_error, "unexpected character '" + std::string(1, ch) + "'");
        value = value * 10 + (ch - '0');
    }
    return negative ? BigInt(-value) : value;
}

inline BigInt pow10(unsigned k) {
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) r *= 10;
    return r;
}

}  // namespace detail

// Accepts "p/q", integers, and decimals with an optional exponent ("-1.25e-3").
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw error(errc::parse_error, "empty rational");

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const BigInt num = detail::parse_integer(std::string_view(s).substr(0, slash), true);
        const BigInt den = detail::parse_integer(std::string_view(s).substr(slash + 1), false);
        if (den == 0) throw error(errc::parse_error, "zero denominator in '" + s + "'");
        return Rational(num, den);
    }

    std::string_view body = s;
    long long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
        const BigInt ex = detail::parse_integer(body.substr(e + 1), true);
        if (abs(ex) > 4000) throw error(errc::parse_error, "exponent out of range in '" + s + "'");
        exponent = ex.convert_to<long long>();
        body = body.substr(0, e);
    }
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    std::string digits;
    long long frac_digits = 0;
    if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        digits = std::string(body.substr(0, dot)) + std::string(body.substr(dot + 1));
        frac_digits = static_cast<long long>(body.size() - dot - 1);
        if (digits.empty()) throw error(errc::parse_error, "missing digits in '" + s + "'");
    } else {
        digits = std::string(body);
    }
    Rational r(detail::parse_integer(digits, false));
    const long long shift = exponent - frac_digits;
    const BigInt scale = detail::pow10(static_cast<unsigned>(std::llabs(shift)));
    r = shift >= 0 ? r * Rational(scale) : r / Rational(scale);
    return negative ? Rational(-r) : r;
}

inline std::optional<BigInt> exact_isqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r != n) return std::nullopt;
    return r;
}

inline std::optional<Rational> exact_sqrt(const Rational& x) {
    const auto num = exact_isqrt(boost::multiprecision::numerator(x));
    if (!num) return std::nullopt;
    const auto den = exact_isqrt(boost::multiprecision::denominator(x));
    if (!den) return std::nullopt;
    return Rational(*num, *den);
}

// Exact element u + v*sqrt(d) of a real quadratic field; d is a non-square
// positive integer whenever v != 0, and d == 0 when v == 0.
class QuadSurd {
public:
    QuadSurd() = default;
    QuadSurd(long long u) : u_(u) {}
    QuadSurd(const Rational& u) : u_(u) {}
    QuadSurd(Rational u, Rational v, BigInt d) : u_(std::move(u)), v_(std::move(v)), d_(std::move(d)) {
        normalize();
    }

    static QuadSurd sqrt(const Rational& x) {
        if (x < 0) throw error(errc::domain_error, "square root of negative rational");
        // sqrt(n/m) = sqrt(n*m)/m keeps the radicand integral.
        const BigInt n = boost::multiprecision::numerator(x);
        const BigInt m = boost::multiprecision::denominator(x);
        BigInt radicand = n * m;
        BigInt outside = 1;
        for (unsigned f = 2; f <= 1000 && BigInt(f) * f <= radicand; ++f) {
            while (radicand % (f * f) == 0) {
                radicand /= f * f;
                outside *= f;
            }
        }
        return QuadSurd(Rational(0), Rational(outside, m), radicand);
    }

    const Rational& rational_part() const { return u_; }
    const Rational& surd_coefficient() const { return v_; }
    const BigInt& radicand() const { return d_; }
    bool is_rational() const { return v_ == 0; }

    int sign() const {
        const int su = u_.sign();
        const int sv = v_.sign();
        if (sv == 0) return su;
        if (su == 0 || su == sv) return sv;
        const Rational diff = u_ * u_ - v_ * v_ * Rational(d_);
        return diff.sign() > 0 ? su : (diff.sign() < 0 ? sv : 0);
    }

    double to_double() const {
        const double a = u_.convert_to<double>();
        if (v_ == 0) return a;
        const double b = v_.convert_to<double>() * std::sqrt(d_.convert_to<double>());
        if ((a >= 0) == (b >= 0) || a == 0) return a + b;
        // Opposite signs: use the conjugate to avoid cancellation.
        const double norm = (u_ * u_ - v_ * v_ * Rational(d_)).convert_to<double>();
        return norm / (a - b);
    }

    std::string str() const {
        if (v_ == 0) return to_string(u_);
        std::string out;
        if (u_ != 0) out = to_string(u_) + (v_ > 0 ? " + " : " - ");
        else if (v_ < 0) out = "-";
        const Rational av = v_ < 0 ? Rational(-v_) : v_;
        if (av != 1) out += to_string(av) + "*";
        return out + "sqrt(" + d_.str() + ")";
    }

    QuadSurd conjugate() const { return QuadSurd(u_, -v_, d_); }

    QuadSurd operator-() const { return QuadSurd(-u_, -v_, d_); }

    friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
        const BigInt d = common_radicand(x, y);
        return QuadSurd(x.u_ + y.u_, x.coeff_over(d) + y.coeff_over(d), d);
    }
    friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return x + (-y); }
    friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
        const BigInt d = common_radicand(x, y);
        const Rational xv = x.coeff_over(d), yv = y.coeff_over(d);
        return QuadSurd(x.u_ * y.u_ + xv * yv * Rational(d), x.u_ * yv + xv * y.u_, d);
    }
    friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) {
        if (y.sign() == 0) throw error(errc::domain_error, "division by zero");
        if (y.v_ == 0) return QuadSurd(x.u_ / y.u_, x.v_ / y.u_, x.d_);
        const Rational norm = y.u_ * y.u_ - y.v_ * y.v_ * Rational(y.d_);
        const QuadSurd num = x * y.conjugate();
        return QuadSurd(num.u_ / norm, num.v_ / norm, num.d_);
    }
    QuadSurd& operator+=(const QuadSurd& y) { return *this = *this + y; }
    QuadSurd& operator-=(const QuadSurd& y) { return *this = *this - y; }
    QuadSurd& operator*=(const QuadSurd& y) { return *this = *this * y; }
    QuadSurd& operator/=(const QuadSurd& y) { return *this = *this / y; }

    friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() == 0; }
    friend std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y) {
        const int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    void normalize() {
        if (v_ != 0 && d_ < 0) throw error(errc::domain_error, "negative radicand");
        if (v_ != 0) {
            if (auto r = exact_isqrt(d_)) {
                u_ += v_ * Rational(*r);
                v_ = 0;
            }
        }
        if (v_ == 0) d_ = 0;
    }

    // Radicand both operands can be written over; throws when the field differs.
    static BigInt common_radicand(const QuadSurd& x, const QuadSurd& y) {
        if (x.v_ == 0) return y.d_;
        if (y.v_ == 0 || x.d_ == y.d_) return x.d_;
        if (exact_sqrt(Rational(x.d_, y.d_))) return y.d_;
        throw error(errc::incompatible_radicands,
                    "sqrt(" + x.d_.str() + ") and sqrt(" + y.d_.str() + ") do not share a field");
    }

    Rational coeff_over(const BigInt& d) const {
        if (v_ == 0 || d_ == d) return v_;
        return v_ * *exact_sqrt(Rational(d_, d));
    }

    Rational u_ = 0;
    Rational v_ = 0;
    BigInt d_ = 0;
};

inline double to_double(const QuadSurd& x) { return x.to_double(); }
inline int sign(const QuadSurd& x) { return x.sign(); }
inline std::string to_string(const QuadSurd& x) { return x.str(); }

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    using root_type = double;
    static constexpr bool exact = false;
    static double sqrt(double x) { return std::sqrt(x); }
};

template <>
struct scalar_traits<Rational> {
    using root_type = QuadSurd;
    static constexpr bool exact = true;
    static QuadSurd sqrt(const Rational& x) { return QuadSurd::sqrt(x); }
};

template <class T>
concept Scalar = requires { typename scalar_traits<T>::root_type; };

template <Scalar T>
using root_t = typename scalar_traits<T>::root_type;

template <Scalar T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

template <class T>
T abs_value(const T& x) {
    return sign(x) < 0 ? T(-x) : x;
}

// Comparisons on the float path use a relative tolerance with an absolute floor.
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;

    double slack(double scale) const { return std::max(abs, rel * std::abs(scale)); }
};

// True when x is positive beyond the tolerance (exactly positive on the exact path).
template <class T>
bool clearly_positive(const T& x, double scale, const Tolerance& tol) {
    if constexpr (std::same_as<T, double>) return x > tol.slack(scale);
    else return sign(x) > 0;
}

template <class T>
bool near_zero(const T& x, double scale, const Tolerance& tol) {
    if constexpr (std::same_as<T, double>) return std::abs(x) <= tol.slack(scale);
    else return sign(x) == 0;
}

}  // namespace sturmjsr
