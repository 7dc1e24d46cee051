#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "sturmjsr/classify.hpp"
#include "sturmjsr/errors.hpp"
#include "sturmjsr/jsr_engine.hpp"
#include "sturmjsr/matrix_core.hpp"
#include "sturmjsr/projective_dynamics.hpp"

namespace sturmjsr {

struct TransferSeriesConfig {
    double tail_tolerance = 1e-12;
    std::size_t max_depth = 400;
};

// phi for the extremal intervals: log((x + rho_i) / rho_i).
template <Scalar T>
double phi_extremal(const InducedSystem<T>& sys, int i, double x) {
    require_unit(x, "x");
    return std::log1p(x / sys.branch[i].rho);
}

namespace detail {

// Bound on |f'| over X0 u X1; |x + sigma| is smallest at the gap ends.
inline double sup_f_prime(const InducedSystem<double>& sys) {
    return std::max(1.0 / std::abs(sys.branch[0].hi + sys.branch[0].sigma),
                    1.0 / std::abs(sys.branch[1].lo + sys.branch[1].sigma));
}

// Bound on the branch derivatives over [X0.lo, X1.hi]; T_i' is monotone, so
// the endpoints suffice.
inline double sup_branch_derivative(const InducedSystem<double>& sys) {
    const double lo = sys.branch[0].lo, hi = sys.branch[1].hi;
    double theta = 0.0;
    for (const Branch& br : sys.branch) theta = std::max({theta, br.derivative(lo), br.derivative(hi)});
    return theta;
}

}  // namespace detail

// phi_c(z) = sum_{n>=1} integral of f' over tau_c^n([0, z]). The image of [0, z]
// is tracked as a union of pieces, each inside one branch interval, so every
// term is a sum of exact f-differences.
template <Scalar T>
double phi_series(const InducedSystem<T>& system, double c, double z, const TransferSeriesConfig& cfg = {}) {
    require_unit(c, "c");
    require_unit(z, "z");
    if (cfg.tail_tolerance <= 0) throw error(errc::invalid_argument, "tail tolerance must be positive");
    const InducedSystem<double> sys = to_float_system(system);
    z = std::clamp(z, 0.0, 1.0);
    if (z == 0.0) return 0.0;

    const double m_f = detail::sup_f_prime(sys);
    const double theta = detail::sup_branch_derivative(sys);

    struct Piece {
        double u, v;
        int branch;
    };
    std::vector<Piece> pieces{{0.0, z, -1}}, next;
    double sum = 0.0;
    for (std::size_t n = 1; n <= cfg.max_depth; ++n) {
        next.clear();
        auto push = [&](double u, double v, int i) {
            if (v <= u) return;
            const Branch& br = sys.branch[i];
            const double tu = br.map(u), tv = br.map(v);
            // f(tv) - f(tu) = log((tu + sigma) / (tv + sigma)).
            sum += std::log1p((tu - tv) / (tv + br.sigma));
            next.push_back({tu, tv, i});
        };
        for (const Piece& p : pieces) {
            if (p.v < c) push(p.u, p.v, 1);
            else if (p.u >= c) push(p.u, p.v, 0);
            else {
                push(p.u, c, 1);
                push(c, p.v, 0);
            }
        }
        pieces.swap(next);
        double length = 0.0;
        for (const Piece& p : pieces) length += p.v - p.u;
        const double tail = theta < 1.0 ? length * m_f * theta / (1.0 - theta) : length * m_f;
        if (tail < cfg.tail_tolerance) return sum;
    }
    throw error(errc::no_convergence, "transfer series did not reach its tail tolerance");
}

// (1 + rho)(b1/(b1+d1) + rho) / (rho (a0/(a0+c0) + rho)), the exponential of Delta(Gamma_i).
template <Scalar T>
root_t<T> delta_extremal_ratio(const MatrixPair<T>& pair, int i) {
    using R = root_t<T>;
    const ProjectiveData<T> pd = projective_data(pair[i]);
    const R& rho = pd.rho;
    const R left = R(pair.A1.b / (pair.A1.b + pair.A1.d));
    const R right = R(pair.A0.a / (pair.A0.a + pair.A0.c));
    return (R(T(1)) + rho) * (left + rho) / (rho * (right + rho));
}

template <Scalar T>
double delta_extremal(const InducedSystem<T>& sys, int i) {
    const Branch& b0 = sys.branch[0];
    const Branch& b1 = sys.branch[1];
    const double rho = sys.branch[i].rho;
    return std::log1p(1.0 / rho) + std::log((b1.lo + rho) / (b0.hi + rho));
}

template <Scalar T>
double delta_numeric(const InducedSystem<T>& system, double c, const TransferSeriesConfig& cfg = {}) {
    const InducedSystem<double> sys = to_float_system(system);
    const double at_one = phi_series(sys, c, 1.0, cfg);
    const double at_x0 = phi_series(sys, c, sys.branch[0].hi, cfg);
    const double at_x1 = phi_series(sys, c, sys.branch[1].lo, cfg);
    return at_one - (at_x0 - at_x1);
}

template <class R>
struct ThresholdPair {
    R t0{};
    R t1{};
};

template <Scalar T>
ThresholdPair<root_t<T>> thresholds(const MatrixPair<T>& pair, const Tolerance& tol = {}) {
    using R = root_t<T>;
    if (!classify_pair(pair, tol).in_C) throw error(errc::not_in_class_c, "thresholds need a concave-convex pair");
    const Matrix2<T>& A0 = pair.A0;
    const Matrix2<T>& A1 = pair.A1;
    const R scale = R((A0.a + A0.c) / (A1.b + A1.d));
    std::array<R, 2> t{};
    for (int i = 0; i < 2; ++i) {
        const R rho = projective_data(pair[i]).rho;
        const R direct = rho * (R(A0.a) + rho * R(A0.a + A0.c)) /
                         ((R(T(1)) + rho) * (R(A1.b) + rho * R(A1.b + A1.d)));
        const R via_delta = scale / delta_extremal_ratio(pair, i);
        bool agree;
        if constexpr (is_exact_v<T>) agree = direct == via_delta;
        else agree = std::abs(direct - via_delta) <= 1e-12 * std::abs(direct);
        if (!agree) throw error(errc::closed_form_mismatch, "threshold closed forms disagree");
        t[i] = direct;
    }
    return {t[0], t[1]};
}

enum class Regime { A0Dominates, A1Dominates, Interior };

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::A0Dominates: return "A0Dominates";
    case Regime::A1Dominates: return "A1Dominates";
    case Regime::Interior: return "Interior";
    }
    return "?";
}

template <class R, Scalar T>
Regime regime_for(const ThresholdPair<R>& th, const T& t, const Tolerance& tol = {}) {
    if constexpr (is_exact_v<T>) {
        if (R(t) <= th.t0) return Regime::A0Dominates;
        if (R(t) >= th.t1) return Regime::A1Dominates;
    } else {
        const double t0 = to_double(th.t0), t1 = to_double(th.t1);
        if (t <= t0 + tol.slack(t0)) return Regime::A0Dominates;
        if (t >= t1 - tol.slack(t1)) return Regime::A1Dominates;
    }
    return Regime::Interior;
}

template <Scalar T>
Regime domination_check(const MatrixPair<T>& pair, const T& t, const Tolerance& tol = {}) {
    if (sign(t) <= 0) throw error(errc::non_positive_scale, "scale t must be positive");
    return regime_for(thresholds(pair, tol), t, tol);
}

// G(t) = log((a0 + c0) / ((b1 + d1) t)).
template <Scalar T>
double target_delta(const MatrixPair<T>& pair, double t) {
    const MatrixPair<double> fp = to_double(pair);
    return std::log((fp.A0.a + fp.A0.c) / ((fp.A1.b + fp.A1.d) * t));
}

// Root c* of Delta(Gamma_c) = G(t) for t strictly between the thresholds.
template <Scalar T>
double gamma_of_t(const InducedSystem<T>& system, const TransferSeriesConfig& cfg = {}) {
    if (regime_for(thresholds(system.pair), system.t) != Regime::Interior)
        throw error(errc::out_of_interior_range, "t is not strictly between t0 and t1");
    const InducedSystem<double> sys = to_float_system(system);
    const double t = sys.t;
    const double g = target_delta(sys.pair, t);
    auto h = [&](double c) { return delta_numeric(sys, c, cfg) - g; };
    const double h0 = h(0.0), h1 = h(1.0);
    if (!(h0 > 0.0 && h1 < 0.0)) throw error(errc::no_convergence, "no sign change of Delta - G on [0,1]");
    std::uintmax_t max_iter = 200;
    const auto bracket = boost::math::tools::toms748_solve(h, 0.0, 1.0, h0, h1,
                                                           boost::math::tools::eps_tolerance<double>(50), max_iter);
    const double c = 0.5 * (bracket.first + bracket.second);
    if (std::abs(h(c)) > 1e-9) throw error(errc::no_convergence, "root of Delta - G failed its residual check");
    return c;
}

enum class Verdict { Certified, Inconclusive };

inline const char* to_string(Verdict v) { return v == Verdict::Certified ? "Certified" : "Inconclusive"; }

struct CertificateConfig {
    std::size_t grid_size = 256;
    double flat_tol = 1e-6;
    double margin_tol = 1e-8;
    TransferSeriesConfig series;
};

struct CertificateReport {
    double t = 0.0;
    Regime regime = Regime::Interior;
    double c = 0.0;
    SturmianIntervalSpec<double> interval;
    double constant_value = 0.0;
    double flatness = 0.0;
    double exterior_margin = 0.0;
    bool monotone_ok = false;
    // Domination regime exactly at a threshold: g touches the constant at the gap end.
    bool boundary_contact = false;
    std::size_t points_on_interval = 0;
    std::size_t points_off_interval = 0;
    Verdict verdict = Verdict::Inconclusive;
};

template <Scalar T>
CertificateReport certify(const MatrixPair<T>& pair, const T& t, const CertificateConfig& cfg = {}) {
    if (cfg.grid_size < 64) throw error(errc::invalid_argument, "grid size must be at least 64");
    if (sign(t) <= 0) throw error(errc::non_positive_scale, "scale t must be positive");
    require_class_d(pair);

    CertificateReport rep;
    rep.regime = domination_check(pair, t);
    const InducedSystem<double> sys = to_float_system(induced_system(pair, t));
    rep.t = sys.t;

    if (rep.regime == Regime::Interior) rep.c = gamma_of_t(sys, cfg.series);
    else rep.c = rep.regime == Regime::A0Dominates ? 0.0 : 1.0;
    rep.interval = sturmian_interval_endpoints(sys, rep.c);

    auto phi = [&](double x) {
        switch (rep.regime) {
        case Regime::A0Dominates: return phi_extremal(sys, 0, x);
        case Regime::A1Dominates: return phi_extremal(sys, 1, x);
        default: return phi_series(sys, rep.c, x, cfg.series);
        }
    };
    // g = f + phi - phi o T on X_i, together with f + phi for the monotonicity test.
    auto evaluate = [&](double x, int i, double& f_plus_phi) {
        const double fx = sys.branch[i].f(x) + (i == 1 ? sys.log_t : 0.0);
        const double px = phi(x);
        f_plus_phi = fx + px;
        const double image = std::clamp(sys.branch[i].inverse(x), 0.0, 1.0);
        return fx + px - phi(image);
    };

    std::vector<double> on_values;
    struct OffPoint {
        double x, g;
        int branch;
    };
    std::vector<OffPoint> off;
    rep.monotone_ok = true;
    const std::size_t n = cfg.grid_size;
    for (int i = 0; i < 2; ++i) {
        const Branch& br = sys.branch[i];
        double previous = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double x = k + 1 == n ? br.hi : br.lo + (br.hi - br.lo) * static_cast<double>(k) / (n - 1);
            double fp = 0.0;
            const double g = evaluate(x, i, fp);
            if (k > 0 && (i == 0 ? fp <= previous : fp >= previous)) rep.monotone_ok = false;
            previous = fp;
            if (rep.interval.contains(x)) on_values.push_back(g);
            else off.push_back({x, g, i});
        }
    }
    for (const auto& piece : {rep.interval.piece0, rep.interval.piece1}) {
        if (!piece) continue;
        const int i = piece->hi <= sys.branch[0].hi + interval_inflation ? 0 : 1;
        double unused = 0.0;
        on_values.push_back(evaluate(piece->lo, i, unused));
        on_values.push_back(evaluate(piece->hi, i, unused));
    }

    const auto [lo_it, hi_it] = std::minmax_element(on_values.begin(), on_values.end());
    rep.flatness = *hi_it - *lo_it;
    rep.constant_value = 0.5 * (*hi_it + *lo_it);
    rep.points_on_interval = on_values.size();
    rep.points_off_interval = off.size();

    rep.exterior_margin = std::numeric_limits<double>::infinity();
    double margin_away_from_gap = std::numeric_limits<double>::infinity();
    for (const OffPoint& p : off) {
        const double m = rep.constant_value - p.g;
        rep.exterior_margin = std::min(rep.exterior_margin, m);
        const bool at_gap_end = (p.branch == 0 && p.x == sys.branch[0].hi) || (p.branch == 1 && p.x == sys.branch[1].lo);
        if (!at_gap_end) margin_away_from_gap = std::min(margin_away_from_gap, m);
    }

    bool margin_ok = rep.exterior_margin > cfg.margin_tol;
    if (!margin_ok && rep.regime != Regime::Interior) {
        // At a threshold the domination inequality is only one-sided at the gap end.
        rep.boundary_contact = rep.exterior_margin >= -cfg.margin_tol;
        margin_ok = rep.boundary_contact && margin_away_from_gap > cfg.margin_tol;
    }
    const bool flat_ok = rep.flatness <= cfg.flat_tol;
    rep.verdict = flat_ok && margin_ok && rep.monotone_ok ? Verdict::Certified : Verdict::Inconclusive;
    return rep;
}

}  // namespace sturmjsr
