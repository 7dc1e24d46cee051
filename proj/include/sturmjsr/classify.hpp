#pragma once

#include <array>
#include <optional>
#include <utility>

#include "sturmjsr/errors.hpp"
#include "sturmjsr/matrix_core.hpp"
#include "sturmjsr/scalar.hpp"

namespace sturmjsr {

enum class Convexity { ProjectivelyConcave, ProjectivelyConvex, NotApplicable };

inline const char* to_string(Convexity c) {
    switch (c) {
    case Convexity::ProjectivelyConcave: return "ProjectivelyConcave";
    case Convexity::ProjectivelyConvex: return "ProjectivelyConvex";
    case Convexity::NotApplicable: return "NotApplicable";
    }
    return "?";
}

template <Scalar T>
struct MatrixClassReport {
    bool positive = false;
    bool det_positive = false;
    Convexity convexity = Convexity::NotApplicable;
    std::optional<ProjectiveData<T>> witness;
};

namespace detail {

// +1 for the concave side, -1 for the convex side, 0 when undecided.
template <class X>
int vote(const X& x, double scale, const Tolerance& tol) {
    if (clearly_positive(x, scale, tol)) return 1;
    if (clearly_positive(X(-x), scale, tol)) return -1;
    return 0;
}

template <Scalar T>
T mobius(const Matrix2<T>& A, const T& x) {
    return ((A.a - A.b) * x + A.b) / ((A.a + A.c - A.b - A.d) * x + A.b + A.d);
}

}  // namespace detail

template <Scalar T>
MatrixClassReport<T> classify_matrix(const Matrix2<T>& A, const Tolerance& tol = {}) {
    using R = root_t<T>;
    MatrixClassReport<T> report;
    report.positive = entries_positive(A);
    report.det_positive = sign(A.det()) > 0;
    if (!report.positive || !report.det_positive) return report;
    const T alpha = A.a + A.c - A.b - A.d;
    if (sign(alpha) == 0) return report;

    const ProjectiveData<T> pd = projective_data(A);
    report.witness = pd;

    const double entry_scale = to_double(A.a + A.b + A.c + A.d);
    // (i) strict concavity of T_A, seen through its midpoint second difference.
    const T half = T(1) / T(2);
    const T second_diff = T(2) * detail::mobius(A, half) - detail::mobius(A, T(0)) - detail::mobius(A, T(1));
    const int v_shape = detail::vote(second_diff, 1.0, tol);
    // (ii) sign of alpha.
    const int v_alpha = detail::vote(alpha, entry_scale, tol);
    // (iii) rho > 0 versus rho < -1.
    int v_rho = 0;
    if (clearly_positive(pd.rho, to_double(pd.rho), tol)) v_rho = 1;
    else if (clearly_positive(R(-(pd.rho + R(T(1)))), to_double(pd.rho), tol)) v_rho = -1;
    // (iv) order of the left Perron vector coordinates.
    const R w_gap = pd.perron_left[0] - pd.perron_left[1];
    const int v_perron = detail::vote(w_gap, to_double(pd.perron_left[0]), tol);

    if (v_shape == 0 || v_shape != v_alpha || v_alpha != v_rho || v_rho != v_perron)
        throw error(errc::inconsistent_equivalences,
                    "concavity tests disagree (shape, alpha, rho, perron) = (" + std::to_string(v_shape) + ", " +
                        std::to_string(v_alpha) + ", " + std::to_string(v_rho) + ", " +
                        std::to_string(v_perron) + ")");
    report.convexity = v_alpha > 0 ? Convexity::ProjectivelyConcave : Convexity::ProjectivelyConvex;
    return report;
}

// Margins follow one convention: a condition holds iff its margin is negative.
//   [0] a0/c0 - b1/d1   [1] max(alpha1, -alpha0)   [2] rho1 - sigma0   [3] sigma1 - rho0
template <Scalar T>
struct PairClassReport {
    using R = root_t<T>;
    bool in_M2plus = false;
    bool in_C = false;
    bool in_D = false;
    std::optional<std::pair<T, T>> image_gap;
    std::array<std::optional<R>, 4> inequality_margins{};
};

template <Scalar T>
PairClassReport<T> classify_pair(const MatrixPair<T>& pair, const Tolerance& tol = {}) {
    using R = root_t<T>;
    PairClassReport<T> report;
    const Matrix2<T>& A0 = pair.A0;
    const Matrix2<T>& A1 = pair.A1;
    report.in_M2plus = in_m2_plus(A0) && in_m2_plus(A1);
    if (!report.in_M2plus) return report;

    report.image_gap = std::make_pair(A0.a / (A0.a + A0.c), A1.b / (A1.b + A1.d));
    const T ratio0 = A0.a / A0.c;
    const T ratio1 = A1.b / A1.d;
    const T alpha0 = A0.a + A0.c - A0.b - A0.d;
    const T alpha1 = A1.a + A1.c - A1.b - A1.d;
    const T alpha_margin = sign(alpha1 + alpha0) > 0 ? T(alpha1) : T(-alpha0);
    report.inequality_margins[0] = R(ratio0 - ratio1);
    report.inequality_margins[1] = R(alpha_margin);

    auto holds = [&](const R& m, double scale) { return clearly_positive(R(-m), scale, tol); };
    const bool ratios_ok = holds(R(ratio0 - ratio1), to_double(ratio1));
    const bool alphas_ok = holds(R(alpha_margin), to_double(A0.a + A0.d + A1.a + A1.d));
    report.in_C = ratios_ok && alphas_ok;

    if (sign(alpha0) != 0 && sign(alpha1) != 0) {
        const ProjectiveData<T> p0 = projective_data(A0);
        const ProjectiveData<T> p1 = projective_data(A1);
        const R m2 = p1.rho - R(p0.sigma);
        const R m3 = R(p1.sigma) - p0.rho;
        report.inequality_margins[2] = m2;
        report.inequality_margins[3] = m3;
        report.in_D = report.in_C && holds(m2, to_double(p1.rho)) && holds(m3, to_double(p0.rho));
    }
    return report;
}

template <Scalar T>
PairClassReport<T> in_class_C(const MatrixPair<T>& pair, const Tolerance& tol = {}) {
    return classify_pair(pair, tol);
}

template <Scalar T>
PairClassReport<T> in_class_D(const MatrixPair<T>& pair, const Tolerance& tol = {}) {
    return classify_pair(pair, tol);
}

template <Scalar T>
MatrixPair<T> d2_pair(const T& b, const T& c) {
    if (sign(b) <= 0 || sign(c) <= 0) throw error(errc::non_positive_scale, "d2_pair needs b, c > 0");
    return {{T(1), b, c, T(1)}, {T(1), c, b, T(1)}};
}

template <Scalar T>
MatrixPair<T> scale_pair(const MatrixPair<T>& pair, const T& t) {
    if (sign(t) <= 0) throw error(errc::non_positive_scale, "scale t must be positive");
    return {pair.A0, pair.A1.scaled(t)};
}

template <Scalar T>
MatrixPair<T> similarity_transform(const MatrixPair<T>& pair, const Matrix2<T>& P, const T& u, const T& v) {
    const T det = P.det();
    if (sign(det) == 0) throw error(errc::singular_transform, "P is singular");
    if (sign(u) <= 0 || sign(v) <= 0) throw error(errc::non_positive_scale, "u and v must be positive");
    const Matrix2<T> inv{P.d / det, -P.b / det, -P.c / det, P.a / det};
    return {(inv * pair.A0 * P).scaled(u), (inv * pair.A1 * P).scaled(v)};
}

}  // namespace sturmjsr
