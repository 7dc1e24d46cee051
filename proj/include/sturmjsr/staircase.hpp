#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sturmjsr/binary_word.hpp"
#include "sturmjsr/certification.hpp"
#include "sturmjsr/errors.hpp"
#include "sturmjsr/jsr_engine.hpp"
#include "sturmjsr/sturmian_words.hpp"

namespace sturmjsr {

struct StaircaseSample {
    double t = 0.0;
    RationalParameter parameter;
    double value = 0.0;
    BinaryWord word;
    Regime regime = Regime::Interior;
};

// P(t) at a fixed denominator bound. Thresholds and the Sturmian value table
// are computed once, so repeated evaluation is cheap.
class ParameterMap {
public:
    template <Scalar T>
    ParameterMap(const MatrixPair<T>& pair, std::int64_t max_den) : table_(pair, max_den) {
        if (max_den < 2) throw error(errc::invalid_argument, "max_den must be at least 2");
        require_class_d(pair);
        const auto th = thresholds(pair);
        thresholds_ = {to_double(th.t0), to_double(th.t1)};
        log_r0_ = std::log(to_double(spectral_radius(pair.A0)));
        log_r1_ = std::log(to_double(spectral_radius(pair.A1)));
    }

    StaircaseSample operator()(double t) const { return sample(t, regime_for(thresholds_, t)); }

    // Sample with a regime decided elsewhere (for instance exactly on rationals).
    StaircaseSample sample(double t, Regime regime) const {
        if (!(t > 0.0)) throw error(errc::non_positive_scale, "scale t must be positive");
        StaircaseSample s;
        s.t = t;
        s.regime = regime;
        switch (regime) {
        case Regime::A0Dominates:
            s.parameter = RationalParameter(0, 1);
            s.value = log_r0_;
            break;
        case Regime::A1Dominates:
            s.parameter = RationalParameter(1, 1);
            s.value = std::log(t) + log_r1_;
            break;
        case Regime::Interior: {
            // Strictly between the thresholds the parameter is neither 0 nor 1;
            // the value stays the best estimate over the whole table.
            s.parameter = table_.argmax(std::log(t), true).first;
            s.value = table_.argmax(std::log(t)).second;
            break;
        }
        }
        s.word = mechanical_word(s.parameter);
        return s;
    }

    const ThresholdPair<double>& threshold_values() const { return thresholds_; }
    std::int64_t max_den() const { return table_.max_den(); }

private:
    SturmianValueTable table_;
    ThresholdPair<double> thresholds_;
    double log_r0_ = 0.0;
    double log_r1_ = 0.0;
};

template <Scalar T>
StaircaseSample parameter_map(const MatrixPair<T>& pair, const T& t, std::int64_t max_den) {
    const Regime regime = domination_check(pair, t);
    return ParameterMap(pair, max_den).sample(to_double(t), regime);
}

// Geometrically spaced samples of P over [t_min, t_max].
template <Scalar T>
std::vector<StaircaseSample> staircase_scan(const MatrixPair<T>& pair, double t_min, double t_max,
                                            std::size_t samples, std::int64_t max_den) {
    if (!(t_min > 0.0 && t_min < t_max)) throw error(errc::invalid_argument, "need 0 < t_min < t_max");
    if (samples < 2) throw error(errc::invalid_argument, "need at least two samples");
    const ParameterMap map(pair, max_den);
    std::vector<StaircaseSample> out;
    out.reserve(samples);
    const double a = std::log(t_min), b = std::log(t_max);
    for (std::size_t k = 0; k < samples; ++k) {
        double t = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(samples - 1));
        if (k == 0) t = t_min;
        if (k + 1 == samples) t = t_max;
        out.push_back(map(t));
    }
    return out;
}

inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_staircase_csv(std::ostream& os, const std::vector<StaircaseSample>& samples) {
    os << "t,parameter_num,parameter_den,value,word\n";
    for (const StaircaseSample& s : samples)
        os << format_g17(s.t) << ',' << s.parameter.p() << ',' << s.parameter.q() << ','
           << format_g17(s.value) << ',' << s.word.str() << '\n';
}

struct PlateauEstimate {
    RationalParameter parameter;
    double t_lo = 0.0;
    double t_hi = 0.0;  // +inf for the 1/1 plateau
    double resolution = 0.0;
};

// Plateau of param at the given denominator bound. Interior edges are the
// innermost sampled points that still return param.
inline PlateauEstimate plateau_bounds(const ParameterMap& map, const RationalParameter& param, double resolution) {
    if (!(resolution > 0.0)) throw error(errc::invalid_argument, "resolution must be positive");
    const auto& th = map.threshold_values();
    PlateauEstimate est{param, 0.0, 0.0, resolution};
    if (param == RationalParameter(0, 1)) {
        est.t_hi = th.t0;
        return est;
    }
    if (param == RationalParameter(1, 1)) {
        est.t_lo = th.t1;
        est.t_hi = std::numeric_limits<double>::infinity();
        return est;
    }
    if (param.q() > map.max_den())
        throw error(errc::plateau_not_found, param.str() + " exceeds the denominator bound");

    double lo = th.t0, hi = th.t1, inside = 0.0;
    bool found = false;
    for (int iter = 0; iter < 400 && hi > lo * (1.0 + 1e-15); ++iter) {
        const double mid = std::sqrt(lo * hi);
        const RationalParameter p = map(mid).parameter;
        if (p == param) {
            inside = mid;
            found = true;
            break;
        }
        (p < param ? lo : hi) = mid;
    }
    if (!found) throw error(errc::plateau_not_found, "no sampled t returns " + param.str());

    double a = lo, b = inside;
    for (int iter = 0; iter < 200 && b - a >= resolution; ++iter) {
        const double mid = 0.5 * (a + b);
        (map(mid).parameter == param ? b : a) = mid;
    }
    est.t_lo = b;
    a = inside;
    b = hi;
    for (int iter = 0; iter < 200 && b - a >= resolution; ++iter) {
        const double mid = 0.5 * (a + b);
        (map(mid).parameter == param ? a : b) = mid;
    }
    est.t_hi = a;
    return est;
}

template <Scalar T>
PlateauEstimate plateau_bounds(const MatrixPair<T>& pair, const RationalParameter& param, double resolution,
                               std::int64_t max_den) {
    return plateau_bounds(ParameterMap(pair, max_den), param, resolution);
}

struct SearchTarget {
    double value = 0.0;
    std::string description;
};

// "p/q", a decimal, or "cf:a0,a1,..." (continued fraction [a0; a1, ...]).
inline SearchTarget parse_target(std::string_view text) {
    SearchTarget target;
    target.description = std::string(text);
    if (text.substr(0, 3) == "cf:") {
        std::vector<long long> terms;
        std::string_view rest = text.substr(3);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string item(rest.substr(0, comma));
            try {
                std::size_t used = 0;
                terms.push_back(std::stoll(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::logic_error&) {
                throw error(errc::parse_error, "bad continued fraction term '" + item + "'");
            }
            if (terms.size() > 1 && terms.back() < 1)
                throw error(errc::parse_error, "continued fraction terms after the first must be positive");
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        if (terms.empty()) throw error(errc::parse_error, "empty continued fraction");
        Rational x(terms.back());
        for (std::size_t i = terms.size() - 1; i-- > 0;) x = Rational(terms[i]) + Rational(1) / x;
        target.value = to_double(x);
        return target;
    }
    target.value = to_double(parse_rational(text));
    return target;
}

struct CounterexampleReport {
    double t = 0.0;
    ParameterBracket bracket;
    double t_lo = 0.0;
    double t_hi = 0.0;
    Regime regime = Regime::Interior;
    bool finiteness_candidate = false;
    std::int64_t max_den = 0;
    std::size_t iterations = 0;
};

// Bisects t so that P_Q straddles the target. The t-bracket runs from the right
// end of the lower neighbour's plateau to the left end of the upper one's,
// both measured at denominator bound 2Q.
template <Scalar T>
CounterexampleReport counterexample_search(const MatrixPair<T>& pair, const SearchTarget& target, double tol,
                                           std::int64_t max_den) {
    if (!(target.value > 0.0 && target.value < 1.0))
        throw error(errc::invalid_argument, "target must lie strictly between 0 and 1");
    if (!(tol > 0.0)) throw error(errc::invalid_argument, "tolerance must be positive");
    const ParameterMap map(pair, max_den);
    const auto& th = map.threshold_values();

    CounterexampleReport rep;
    rep.max_den = max_den;
    double lo = th.t0, hi = th.t1;
    std::optional<RationalParameter> hit;
    while (std::log(hi / lo) >= tol) {
        if (++rep.iterations > 400) throw error(errc::no_convergence, "bisection on t did not close");
        const double mid = std::sqrt(lo * hi);
        const RationalParameter p = map(mid).parameter;
        if (p.value() == target.value) {
            hit = p;
            lo = hi = mid;
            break;
        }
        (p.value() < target.value ? lo : hi) = mid;
    }
    rep.t = std::sqrt(lo * hi);
    rep.regime = map(rep.t).regime;

    if (hit) {
        rep.bracket = {*hit, *hit, *hit};
        const PlateauEstimate plateau = plateau_bounds(map, *hit, tol * rep.t);
        rep.t_lo = plateau.t_lo;
        rep.t_hi = plateau.t_hi;
        return rep;
    }
    rep.bracket = {map(lo).parameter, map(hi).parameter, std::nullopt};
    const ParameterMap fine(pair, 2 * max_den);
    rep.t_lo = plateau_bounds(fine, rep.bracket.lower, tol * rep.t).t_hi;
    rep.t_hi = plateau_bounds(fine, rep.bracket.upper, tol * rep.t).t_lo;
    rep.finiteness_candidate = rep.regime == Regime::Interior;
    return rep;
}

}  // namespace sturmjsr
