#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "sturmjsr/binary_word.hpp"
#include "sturmjsr/classify.hpp"
#include "sturmjsr/errors.hpp"
#include "sturmjsr/matrix_core.hpp"
#include "sturmjsr/scalar.hpp"

namespace sturmjsr {

// Membership slack for float-path interval tests.
inline constexpr double interval_inflation = 1e-12;

template <Scalar T>
struct Interval {
    T lo{};
    T hi{};

    bool contains(const T& x) const {
        if constexpr (is_exact_v<T>) return lo <= x && x <= hi;
        else return lo - interval_inflation <= x && x <= hi + interval_inflation;
    }
    T length() const { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

template <Scalar T>
void require_unit(const T& x, const char* what) {
    bool ok;
    if constexpr (is_exact_v<T>) ok = sign(x) >= 0 && x <= T(1);
    else ok = x >= -interval_inflation && x <= 1.0 + interval_inflation;
    if (!ok) throw error(errc::domain_error, std::string(what) + " must lie in [0,1]");
}

template <Scalar T>
T induced_map_unchecked(const Matrix2<T>& A, const T& x) {
    return ((A.a - A.b) * x + A.b) / ((A.a + A.c - A.b - A.d) * x + A.b + A.d);
}

template <Scalar T>
T induced_inverse_unchecked(const Matrix2<T>& A, const T& x) {
    return ((A.b + A.d) * x - A.b) / (A.a - A.b - (A.a + A.c - A.b - A.d) * x);
}

template <Scalar T>
Interval<T> image_interval(const Matrix2<T>& A) {
    return {A.b / (A.b + A.d), A.a / (A.a + A.c)};
}

// T_A(x) = ((a-b)x + b) / (alpha x + b + d).
template <Scalar T>
T induced_map_eval(const Matrix2<T>& A, const T& x) {
    require_unit(x, "x");
    return induced_map_unchecked(A, x);
}

// S_A(x) = ((b+d)x - b) / (-alpha x + a - b), defined on X_A.
template <Scalar T>
T induced_inverse_eval(const Matrix2<T>& A, const T& x) {
    if (!image_interval(A).contains(x)) throw error(errc::domain_error, "x lies outside X_A");
    const T y = induced_inverse_unchecked(A, x);
    if constexpr (is_exact_v<T>) return y;
    else return std::clamp(y, 0.0, 1.0);
}

// Float copy of one branch, used by the series and iteration hot loops.
struct Branch {
    double a = 0, b = 0, c = 0, d = 0;
    double alpha = 0, det = 0, sigma = 0, rho = 0;
    double lo = 0, hi = 0;

    double map(double x) const { return ((a - b) * x + b) / (alpha * x + b + d); }
    double inverse(double x) const { return ((b + d) * x - b) / (a - b - alpha * x); }
    double derivative(double x) const {
        const double den = alpha * x + b + d;
        return det / (den * den);
    }
    // Unscaled induced function on X_A; valid when x + sigma has the sign of -alpha.
    double f(double x) const { return std::log(det / (-alpha * (x + sigma))); }
    double f_prime(double x) const { return -1.0 / (x + sigma); }
};

template <Scalar T>
struct InducedSystem {
    MatrixPair<T> pair;
    T t{};
    Interval<T> X0, X1;
    ProjectiveData<T> proj0, proj1;
    std::array<Branch, 2> branch{};
    double log_t = 0.0;

    const Matrix2<T>& matrix(int i) const { return pair[i]; }
    const Interval<T>& X(int i) const { return i == 0 ? X0 : X1; }
    const ProjectiveData<T>& proj(int i) const { return i == 0 ? proj0 : proj1; }
};

template <Scalar T>
Branch make_branch(const Matrix2<T>& A, const ProjectiveData<T>& pd) {
    Branch br;
    br.a = to_double(A.a);
    br.b = to_double(A.b);
    br.c = to_double(A.c);
    br.d = to_double(A.d);
    br.alpha = to_double(pd.alpha);
    br.det = to_double(A.det());
    br.sigma = to_double(pd.sigma);
    br.rho = to_double(pd.rho);
    const Interval<T> X = image_interval(A);
    br.lo = to_double(X.lo);
    br.hi = to_double(X.hi);
    return br;
}

template <Scalar T>
InducedSystem<T> induced_system(const MatrixPair<T>& pair, const T& t, const Tolerance& tol = {}) {
    if (sign(t) <= 0) throw error(errc::non_positive_scale, "scale t must be positive");
    if (!classify_pair(pair, tol).in_C) throw error(errc::not_in_class_c, "pair is not concave-convex");
    InducedSystem<T> sys;
    sys.pair = pair;
    sys.t = t;
    // Projective objects ignore positive scalings, so A1 stands in for t*A1.
    sys.X0 = image_interval(pair.A0);
    sys.X1 = image_interval(pair.A1);
    sys.proj0 = projective_data(pair.A0);
    sys.proj1 = projective_data(pair.A1);
    sys.branch = {make_branch(pair.A0, sys.proj0), make_branch(pair.A1, sys.proj1)};
    sys.log_t = std::log(to_double(t));
    return sys;
}

// Float copy of a system; exact systems keep their rounded branch data.
template <Scalar T>
InducedSystem<double> to_float_system(const InducedSystem<T>& sys) {
    if constexpr (!is_exact_v<T>) {
        return sys;
    } else {
        InducedSystem<double> out;
        out.pair = to_double(sys.pair);
        out.t = to_double(sys.t);
        out.X0 = {to_double(sys.X0.lo), to_double(sys.X0.hi)};
        out.X1 = {to_double(sys.X1.lo), to_double(sys.X1.hi)};
        for (int i = 0; i < 2; ++i) {
            const ProjectiveData<T>& pd = sys.proj(i);
            ProjectiveData<double>& fd = i == 0 ? out.proj0 : out.proj1;
            fd.alpha = to_double(pd.alpha);
            fd.beta = to_double(pd.beta);
            fd.gamma = to_double(pd.gamma);
            fd.rho = to_double(pd.rho);
            fd.sigma = to_double(pd.sigma);
            fd.delta = to_double(pd.delta);
            fd.fixed_point = to_double(pd.fixed_point);
            fd.perron_value = to_double(pd.perron_value);
            fd.minor_value = to_double(pd.minor_value);
            fd.perron_left = {to_double(pd.perron_left[0]), to_double(pd.perron_left[1])};
            fd.perron_right = {to_double(pd.perron_right[0]), to_double(pd.perron_right[1])};
        }
        out.branch = sys.branch;
        out.log_t = sys.log_t;
        return out;
    }
}

// Index of the branch interval holding x, or -1.
template <Scalar T>
int branch_of(const InducedSystem<T>& sys, const T& x) {
    if (sys.X0.contains(x)) return 0;
    if (sys.X1.contains(x)) return 1;
    return -1;
}

// f of the scaled pair (A0, t A1) on X0 u X1.
template <Scalar T>
double f_eval(const InducedSystem<T>& sys, const T& x) {
    const int i = branch_of(sys, x);
    if (i < 0) throw error(errc::domain_error, "f is only defined on X0 and X1");
    const ProjectiveData<T>& pd = sys.proj(i);
    double value;
    if constexpr (is_exact_v<T>) {
        const T arg = sys.matrix(i).det() / (-pd.alpha * (x + pd.sigma));
        value = std::log(to_double(arg));
    } else {
        value = sys.branch[i].f(x);
    }
    return i == 1 ? value + sys.log_t : value;
}

enum class EscapeSide { Left, Gap, Right };

inline const char* to_string(EscapeSide s) {
    switch (s) {
    case EscapeSide::Left: return "left";
    case EscapeSide::Gap: return "gap";
    case EscapeSide::Right: return "right";
    }
    return "?";
}

struct ItineraryResult {
    BinaryWord word;
    std::optional<std::size_t> escaped_at;
    std::optional<EscapeSide> side;
};

template <Scalar T>
ItineraryResult itinerary(const InducedSystem<T>& sys, T x, std::size_t n) {
    ItineraryResult out;
    for (std::size_t j = 0; j < n; ++j) {
        const int i = branch_of(sys, x);
        if (i < 0) {
            out.escaped_at = j;
            if (x < sys.X0.lo) out.side = EscapeSide::Left;
            else if (x > sys.X1.hi) out.side = EscapeSide::Right;
            else out.side = EscapeSide::Gap;
            return out;
        }
        out.word.push_back(i);
        x = induced_inverse_unchecked(sys.matrix(i), x);
        if constexpr (!is_exact_v<T>) x = std::clamp(x, 0.0, 1.0);
    }
    return out;
}

// Itinerary padded past an escape by the coding of the nearest Cantor-set point:
// left of X0 continues as 0^inf, right of X1 as 1^inf, the gap as 0 1^inf
// (the right end T_{A0}(1) of X0).
template <Scalar T>
BinaryWord symbolic_coding(const InducedSystem<T>& sys, const T& x, std::size_t n) {
    ItineraryResult it = itinerary(sys, x, n);
    BinaryWord w = it.word;
    if (it.escaped_at) {
        if (*it.side == EscapeSide::Gap && w.size() < n) w.push_back(0);
        const int fill = *it.side == EscapeSide::Left ? 0 : 1;
        while (w.size() < n) w.push_back(fill);
    }
    return w;
}

// Fixed point of T_{w_1} o ... o T_{w_n} by iterating the contraction from 1/2.
template <Scalar T>
double periodic_point(const InducedSystem<T>& sys, const BinaryWord& word) {
    if (word.empty()) throw error(errc::empty_word, "periodic_point needs a non-empty word");
    double x = 0.5;
    for (int iter = 0; iter < 10000; ++iter) {
        double y = x;
        for (std::size_t k = word.size(); k-- > 0;) y = sys.branch[word[k]].map(y);
        if (std::abs(y - x) < 1e-14) return y;
        x = y;
    }
    throw error(errc::no_convergence, "periodic point iteration did not settle for " + word.str());
}

// tau_c: the symbol-1 branch left of c, the symbol-0 branch from c on.
template <Scalar T>
T hybrid_contraction_eval(const InducedSystem<T>& sys, const T& c, const T& x) {
    require_unit(c, "c");
    require_unit(x, "x");
    return x < c ? induced_map_unchecked(sys.pair.A1, x) : induced_map_unchecked(sys.pair.A0, x);
}

template <Scalar T>
struct SturmianIntervalSpec {
    T c{};
    std::optional<Interval<T>> piece0;
    std::optional<Interval<T>> piece1;

    bool contains(const T& x) const {
        return (piece0 && piece0->contains(x)) || (piece1 && piece1->contains(x));
    }
};

template <Scalar T>
SturmianIntervalSpec<T> sturmian_interval_endpoints(const InducedSystem<T>& sys, const T& c) {
    require_unit(c, "c");
    SturmianIntervalSpec<T> spec;
    spec.c = c;
    if (c != T(1))
        spec.piece0 = Interval<T>{induced_map_unchecked(sys.pair.A0, c), sys.X0.hi};
    if (sign(c) != 0)
        spec.piece1 = Interval<T>{sys.X1.lo, induced_map_unchecked(sys.pair.A1, c)};
    return spec;
}

}  // namespace sturmjsr
