#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sturmjsr/certification.hpp"
#include "sturmjsr/classify.hpp"
#include "sturmjsr/errors.hpp"
#include "sturmjsr/jsr_engine.hpp"
#include "sturmjsr/matrix_core.hpp"
#include "sturmjsr/scalar.hpp"
#include "sturmjsr/staircase.hpp"

namespace sturmjsr {

namespace detail {

// JSON floats are read as the shortest decimal that round-trips, so 0.1 means 1/10.
inline Rational rational_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer()) {
        return v.is_number_unsigned() ? Rational(v.get<std::uint64_t>()) : Rational(v.get<std::int64_t>());
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw error(errc::parse_error, where + " is not finite");
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, x);
        return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const error& e) {
            throw error(errc::parse_error, where + ": " + e.what());
        }
    }
    throw error(errc::parse_error, where + " must be a number or a rational string");
}

inline Matrix2<Rational> matrix_from_json(const nlohmann::json& m, const std::string& name) {
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2)
        throw error(errc::parse_error, name + " must be a 2x2 array of rows");
    auto at = [&](int r, int c) {
        return rational_from_json(m[r][c], name + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    };
    return {at(0, 0), at(0, 1), at(1, 0), at(1, 1)};
}

}  // namespace detail

inline MatrixPair<Rational> pair_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw error(errc::parse_error, "pair file must hold a JSON object");
    for (const auto& item : doc.items())
        if (item.key() != "A0" && item.key() != "A1") throw error(errc::parse_error, "unknown key '" + item.key() + "'");
    if (!doc.contains("A0") || !doc.contains("A1")) throw error(errc::parse_error, "pair file needs A0 and A1");
    return {detail::matrix_from_json(doc["A0"], "A0"), detail::matrix_from_json(doc["A1"], "A1")};
}

inline MatrixPair<Rational> parse_pair_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw error(errc::parse_error, e.what());
    }
    return pair_from_json(doc);
}

inline MatrixPair<Rational> read_pair_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse_error, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_pair_json(ss.str());
}

inline nlohmann::json pair_to_json(const MatrixPair<Rational>& pair) {
    auto m = [](const Matrix2<Rational>& A) {
        return nlohmann::json::array({nlohmann::json::array({to_string(A.a), to_string(A.b)}),
                                      nlohmann::json::array({to_string(A.c), to_string(A.d)})});
    };
    return {{"A0", m(pair.A0)}, {"A1", m(pair.A1)}};
}

// Exact scalars carry both their exact form and a float value.
inline nlohmann::json scalar_json(const Rational& x) { return {{"exact", to_string(x)}, {"value", to_double(x)}}; }
inline nlohmann::json scalar_json(const QuadSurd& x) { return {{"exact", x.str()}, {"value", x.to_double()}}; }
inline nlohmann::json scalar_json(double x) {
    if (std::isinf(x)) return nullptr;
    return x;
}

template <Scalar T>
nlohmann::json to_json(const ProjectiveData<T>& pd) {
    return {{"alpha", scalar_json(pd.alpha)},
            {"beta", scalar_json(pd.beta)},
            {"gamma", scalar_json(pd.gamma)},
            {"rho", scalar_json(pd.rho)},
            {"sigma", scalar_json(pd.sigma)},
            {"delta", scalar_json(pd.delta)},
            {"fixed_point", scalar_json(pd.fixed_point)},
            {"perron_value", scalar_json(pd.perron_value)},
            {"minor_value", scalar_json(pd.minor_value)},
            {"perron_left", {scalar_json(pd.perron_left[0]), scalar_json(pd.perron_left[1])}},
            {"perron_right", {scalar_json(pd.perron_right[0]), scalar_json(pd.perron_right[1])}}};
}

template <Scalar T>
nlohmann::json to_json(const MatrixClassReport<T>& r) {
    nlohmann::json j = {{"positive", r.positive},
                        {"det_positive", r.det_positive},
                        {"convexity", to_string(r.convexity)}};
    j["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json(nullptr);
    return j;
}

template <Scalar T>
nlohmann::json to_json(const PairClassReport<T>& r) {
    nlohmann::json j = {{"in_M2plus", r.in_M2plus}, {"in_C", r.in_C}, {"in_D", r.in_D}};
    j["image_gap"] = r.image_gap ? nlohmann::json::array({scalar_json(r.image_gap->first), scalar_json(r.image_gap->second)})
                                 : nlohmann::json(nullptr);
    static const char* names[4] = {"a0/c0 - b1/d1", "max(alpha1, -alpha0)", "rho1 - sigma0", "sigma1 - rho0"};
    nlohmann::json margins = nlohmann::json::object();
    for (int k = 0; k < 4; ++k)
        margins[names[k]] = r.inequality_margins[k] ? scalar_json(*r.inequality_margins[k]) : nlohmann::json(nullptr);
    j["inequality_margins"] = margins;
    return j;
}

inline nlohmann::json to_json(const RationalParameter& p) { return p.str(); }

inline nlohmann::json to_json(const JsrEstimate& e) {
    return {{"lower", e.lower},
            {"upper", scalar_json(e.upper)},
            {"argmax_word", e.argmax_word.str()},
            {"argmax_parameter", e.argmax_parameter ? nlohmann::json(e.argmax_parameter->str()) : nlohmann::json(nullptr)},
            {"max_length", e.max_length}};
}

inline nlohmann::json to_json(const Interval<double>& iv) { return nlohmann::json::array({iv.lo, iv.hi}); }

inline nlohmann::json to_json(const CertificateReport& r) {
    return {{"t", r.t},
            {"regime", to_string(r.regime)},
            {"c", r.c},
            {"interval",
             {{"c", r.interval.c},
              {"piece0", r.interval.piece0 ? to_json(*r.interval.piece0) : nlohmann::json(nullptr)},
              {"piece1", r.interval.piece1 ? to_json(*r.interval.piece1) : nlohmann::json(nullptr)}}},
            {"constant_value", r.constant_value},
            {"flatness", r.flatness},
            {"exterior_margin", r.exterior_margin},
            {"monotone_ok", r.monotone_ok},
            {"boundary_contact", r.boundary_contact},
            {"points_on_interval", r.points_on_interval},
            {"points_off_interval", r.points_off_interval},
            {"verdict", to_string(r.verdict)}};
}

inline nlohmann::json to_json(const PlateauEstimate& p) {
    return {{"parameter", p.parameter.str()},
            {"t_lo", p.t_lo},
            {"t_hi", scalar_json(p.t_hi)},
            {"t_hi_unbounded", std::isinf(p.t_hi)},
            {"resolution", p.resolution}};
}

inline nlohmann::json to_json(const ParameterBracket& b) {
    return {{"lower", b.lower.str()},
            {"upper", b.upper.str()},
            {"exact", b.exact ? nlohmann::json(b.exact->str()) : nlohmann::json(nullptr)}};
}

inline nlohmann::json to_json(const CounterexampleReport& r) {
    return {{"t", r.t},
            {"bracket", to_json(r.bracket)},
            {"t_lo", r.t_lo},
            {"t_hi", r.t_hi},
            {"t_bracket_width", r.t_hi - r.t_lo},
            {"regime", to_string(r.regime)},
            {"finiteness_candidate", r.finiteness_candidate},
            {"max_den", r.max_den},
            {"iterations", r.iterations}};
}

}  // namespace sturmjsr
