#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "sturmjsr/binary_word.hpp"
#include "sturmjsr/errors.hpp"
#include "sturmjsr/scalar.hpp"

namespace sturmjsr {

// Row-major 2x2 matrix (a b; c d).
template <Scalar T>
struct Matrix2 {
    T a{}, b{}, c{}, d{};

    T det() const { return a * d - b * c; }
    T trace() const { return a + d; }

    Matrix2 scaled(const T& s) const { return {s * a, s * b, s * c, s * d}; }

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

template <Scalar T>
struct MatrixPair {
    Matrix2<T> A0;
    Matrix2<T> A1;

    const Matrix2<T>& operator[](int i) const { return i == 0 ? A0 : A1; }
    friend bool operator==(const MatrixPair&, const MatrixPair&) = default;
};

inline Matrix2<double> to_double(const Matrix2<double>& m) { return m; }
inline Matrix2<double> to_double(const Matrix2<Rational>& m) {
    return {to_double(m.a), to_double(m.b), to_double(m.c), to_double(m.d)};
}
template <Scalar T>
MatrixPair<double> to_double(const MatrixPair<T>& p) {
    return {to_double(p.A0), to_double(p.A1)};
}

template <Scalar T>
bool entries_positive(const Matrix2<T>& m) {
    return sign(m.a) > 0 && sign(m.b) > 0 && sign(m.c) > 0 && sign(m.d) > 0;
}

// Member of M2+(R+): strictly positive entries and positive determinant.
template <Scalar T>
bool in_m2_plus(const Matrix2<T>& m) {
    return entries_positive(m) && sign(m.det()) > 0;
}

template <Scalar T>
void require_m2_plus(const Matrix2<T>& m) {
    if (!entries_positive(m)) throw error(errc::non_positive_matrix, "matrix has a non-positive entry");
    if (sign(m.det()) <= 0) throw error(errc::non_positive_matrix, "matrix determinant is not positive");
}

template <Scalar T>
struct ProjectiveData {
    using R = root_t<T>;
    T alpha{};
    T beta{};
    R gamma{};
    R rho{};
    T sigma{};
    T delta{};
    R fixed_point{};
    R perron_value{};
    std::array<R, 2> perron_left{};
    std::array<R, 2> perron_right{};
    R minor_value{};
};

template <Scalar T>
ProjectiveData<T> projective_data(const Matrix2<T>& A) {
    using R = root_t<T>;
    require_m2_plus(A);
    ProjectiveData<T> pd;
    pd.alpha = A.a + A.c - A.b - A.d;
    if (sign(pd.alpha) == 0)
        throw error(errc::domain_error, "alpha vanishes; the induced map is affine");
    pd.beta = A.a - A.d - T(2) * A.b;
    const T disc = (A.a - A.d) * (A.a - A.d) + T(4) * A.b * A.c;
    pd.gamma = scalar_traits<T>::sqrt(disc);
    // Pick the branch that never subtracts nearly equal quantities.
    if (sign(pd.beta) >= 0) pd.rho = R(T(2) * A.b) / (pd.gamma + R(pd.beta));
    else pd.rho = (pd.gamma - R(pd.beta)) / R(T(2) * pd.alpha);
    pd.sigma = (A.b - A.a) / pd.alpha;
    pd.delta = (A.b + A.d) / pd.alpha;
    // gamma - beta >= 2b > 0, so this form is stable for both signs of alpha.
    pd.fixed_point = R(T(2) * A.b) / (pd.gamma - R(pd.beta));
    pd.perron_value = (R(A.a + A.d) + pd.gamma) / R(T(2));
    pd.minor_value = (R(A.a + A.d) - pd.gamma) / R(T(2));
    pd.perron_left = {R(A.a - A.d) + pd.gamma, R(T(2) * A.b)};
    pd.perron_right = {pd.fixed_point, R(T(1)) - pd.fixed_point};
    return pd;
}

// Real eigenvalues in decreasing order, or nullopt for a complex pair.
template <Scalar T>
std::optional<std::pair<root_t<T>, root_t<T>>> real_eigenvalues(const Matrix2<T>& A) {
    using R = root_t<T>;
    const T tr = A.trace();
    const T disc = tr * tr - T(4) * A.det();
    if (sign(disc) < 0) return std::nullopt;
    const R s = scalar_traits<T>::sqrt(disc);
    return std::make_pair((R(tr) + s) / R(T(2)), (R(tr) - s) / R(T(2)));
}

template <Scalar T>
root_t<T> spectral_radius(const Matrix2<T>& A) {
    using R = root_t<T>;
    const T tr = A.trace();
    const T disc = tr * tr - T(4) * A.det();
    if (sign(disc) < 0) return scalar_traits<T>::sqrt(A.det());
    return (R(abs_value(tr)) + scalar_traits<T>::sqrt(disc)) / R(T(2));
}

// q_A(z) = alpha z^2 + beta z - b; z may be a root-type value.
template <Scalar T, class Z>
Z q_poly_eval(const Matrix2<T>& A, const Z& z) {
    if (!entries_positive(A)) throw error(errc::non_positive_matrix, "q_A needs a positive matrix");
    const T alpha = A.a + A.c - A.b - A.d;
    const T beta = A.a - A.d - T(2) * A.b;
    return Z(alpha) * z * z + Z(beta) * z - Z(A.b);
}

// Product scaled so that the true product equals exp(log_scale) * matrix.
template <Scalar T>
struct ScaledProduct {
    Matrix2<T> matrix;
    double log_scale = 0.0;
};

template <Scalar T>
ScaledProduct<T> word_product(const MatrixPair<T>& pair, const T& t, const BinaryWord& word) {
    if (word.empty()) throw error(errc::empty_word, "word_product needs a non-empty word");
    if (sign(t) <= 0) throw error(errc::non_positive_scale, "scale t must be positive");
    const Matrix2<T> tA1 = pair.A1.scaled(t);
    ScaledProduct<T> out{word[0] ? tA1 : pair.A0, 0.0};
    for (std::size_t i = 1; i < word.size(); ++i) {
        out.matrix = out.matrix * (word[i] ? tA1 : pair.A0);
        if constexpr (!is_exact_v<T>) {
            const double m = std::max({std::abs(out.matrix.a), std::abs(out.matrix.b),
                                       std::abs(out.matrix.c), std::abs(out.matrix.d)});
            if (m > 0) {
                out.matrix = out.matrix.scaled(1.0 / m);
                out.log_scale += std::log(m);
            }
        }
    }
    return out;
}

template <Scalar T>
double log_spectral_radius(const ScaledProduct<T>& p) {
    return p.log_scale + std::log(to_double(spectral_radius(p.matrix)));
}

}  // namespace sturmjsr
