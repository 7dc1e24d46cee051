#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sturmjsr/binary_word.hpp"
#include "sturmjsr/errors.hpp"
#include "sturmjsr/projective_dynamics.hpp"

namespace sturmjsr {

// p/q in lowest terms with 0 <= p <= q.
class RationalParameter {
public:
    RationalParameter() = default;
    RationalParameter(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
        if (q < 1 || p < 0 || p > q) throw error(errc::invalid_argument, "parameter must satisfy 0 <= p <= q, q >= 1");
        if (std::gcd(p, q) != 1) throw error(errc::invalid_argument, "parameter must be in lowest terms");
    }

    static RationalParameter reduced(std::int64_t p, std::int64_t q) {
        if (q < 1) throw error(errc::invalid_argument, "parameter denominator must be positive");
        const std::int64_t g = std::gcd(p, q);
        return g == 0 ? RationalParameter(p, q) : RationalParameter(p / g, q / g);
    }

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    std::string str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

    friend RationalParameter mediant(const RationalParameter& x, const RationalParameter& y) {
        return RationalParameter::reduced(x.p_ + y.p_, x.q_ + y.q_);
    }

    friend std::strong_ordering operator<=>(const RationalParameter& x, const RationalParameter& y) {
        return static_cast<__int128>(x.p_) * y.q_ <=> static_cast<__int128>(y.p_) * x.q_;
    }
    friend bool operator==(const RationalParameter& x, const RationalParameter& y) {
        return x.p_ == y.p_ && x.q_ == y.q_;
    }

private:
    std::int64_t p_ = 0;
    std::int64_t q_ = 1;
};

inline RationalParameter parse_parameter(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            const long long v = std::stoll(std::string(text));
            return RationalParameter::reduced(v, 1);
        }
        const long long p = std::stoll(std::string(text.substr(0, slash)));
        const long long q = std::stoll(std::string(text.substr(slash + 1)));
        return RationalParameter::reduced(p, q);
    } catch (const std::logic_error&) {
        throw error(errc::parse_error, "cannot parse parameter '" + std::string(text) + "'");
    }
}

struct ParameterBracket {
    RationalParameter lower;
    RationalParameter upper;
    std::optional<RationalParameter> exact;
};

// Lower mechanical word: w_k = floor((k+1)p/q) - floor(kp/q).
inline BinaryWord mechanical_word(const RationalParameter& param) {
    BinaryWord w;
    const std::int64_t p = param.p(), q = param.q();
    for (std::int64_t k = 0; k < q; ++k) w.push_back(static_cast<int>((k + 1) * p / q - k * p / q));
    return w;
}

inline bool is_balanced(const BinaryWord& word) {
    const std::size_t n = word.size();
    if (n == 0) throw error(errc::empty_word, "is_balanced needs a non-empty word");
    std::vector<std::size_t> prefix(2 * n + 1, 0);
    for (std::size_t i = 0; i < 2 * n; ++i) prefix[i + 1] = prefix[i] + word[i % n];
    // Windows longer than n repeat a full period, so lengths below n suffice.
    for (std::size_t len = 1; len < n; ++len) {
        std::size_t lo = len, hi = 0;
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t ones = prefix[s + len] - prefix[s];
            lo = std::min(lo, ones);
            hi = std::max(hi, ones);
        }
        if (hi - lo > 1) return false;
    }
    return true;
}

inline std::pair<BinaryWord, BinaryWord> orbit_min_max(const RationalParameter& param) {
    const BinaryWord w = mechanical_word(param);
    BinaryWord lo = w, hi = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        const BinaryWord r = w.rotated(k);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

namespace detail {

// Compares the periodic sequence u^inf with head.omega on every available
// letter. Agreement counts as equality only once it spans 3|u| letters.
inline int compare_periodic(const BinaryWord& u, int head, const BinaryWord& omega) {
    const std::size_t window = omega.size() + 1;
    for (std::size_t i = 0; i < window; ++i) {
        const int x = u[i % u.size()];
        const int y = i == 0 ? head : omega[i - 1];
        if (x != y) return x < y ? -1 : 1;
    }
    if (window < 3 * u.size())
        throw error(errc::prefix_too_short, "itinerary prefix too short to compare with period " + u.str());
    return 0;
}

}  // namespace detail

// Stern-Brocot descent for the parameter of the Sturmian interval [0 omega, 1 omega].
inline ParameterBracket parameter_from_itinerary(const BinaryWord& omega_prefix, std::size_t depth = 64) {
    if (omega_prefix.empty()) throw error(errc::empty_word, "itinerary prefix is empty");
    if (depth < 1) throw error(errc::invalid_argument, "depth must be at least 1");

    const auto above_floor = [&](const BinaryWord& lo) { return detail::compare_periodic(lo, 0, omega_prefix) >= 0; };
    const auto below_ceiling = [&](const BinaryWord& hi) { return detail::compare_periodic(hi, 1, omega_prefix) <= 0; };

    RationalParameter lower(0, 1), upper(1, 1);
    for (const RationalParameter& end : {lower, upper}) {
        const auto [lo, hi] = orbit_min_max(end);
        if (above_floor(lo) && below_ceiling(hi)) return {end, end, end};
    }
    for (std::size_t step = 0; step < depth; ++step) {
        const RationalParameter m = mediant(lower, upper);
        const auto [lo, hi] = orbit_min_max(m);
        const bool floor_ok = above_floor(lo);
        const bool ceiling_ok = below_ceiling(hi);
        if (floor_ok && ceiling_ok) return {m, m, m};
        if (!ceiling_ok) upper = m;
        else lower = m;
    }
    return {lower, upper, std::nullopt};
}

template <Scalar T>
std::vector<double> sturmian_orbit_points(const InducedSystem<T>& sys, const RationalParameter& param) {
    const BinaryWord w = mechanical_word(param);
    std::vector<double> points;
    points.reserve(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) points.push_back(periodic_point(sys, w.rotated(k)));
    std::sort(points.begin(), points.end());
    return points;
}

// All p/q in [0,1] with q <= max_den, ascending.
inline std::vector<RationalParameter> farey_sequence(std::int64_t max_den) {
    if (max_den < 1) throw error(errc::invalid_argument, "max_den must be at least 1");
    std::vector<RationalParameter> out;
    std::int64_t a = 0, b = 1, c = 1, d = max_den;
    out.emplace_back(a, b);
    while (c <= max_den) {
        const std::int64_t k = (max_den + b) / d;
        const std::int64_t e = k * c - a, f = k * d - b;
        a = c;
        b = d;
        c = e;
        d = f;
        out.emplace_back(a, b);
    }
    return out;
}

}  // namespace sturmjsr
