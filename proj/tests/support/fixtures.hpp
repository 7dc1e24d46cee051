#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "sturmjsr/sturmjsr.hpp"

namespace fixtures {

using sturmjsr::BinaryWord;
using sturmjsr::Matrix2;
using sturmjsr::MatrixPair;
using sturmjsr::Rational;

inline Rational q(long long p, long long d = 1) { return Rational(p, d); }

// The worked example pair: A0 concave with eigenvalues 1, 9/16; A1 convex with 1, 13/16.
inline MatrixPair<Rational> example_pair() {
    return {{q(5, 8), q(3, 112), q(7, 8), q(15, 16)}, {q(15, 16), q(1), q(1, 128), q(7, 8)}};
}

inline MatrixPair<Rational> d2_example() { return sturmjsr::d2_pair(q(1, 4), q(3, 2)); }

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(engine_); }
    long long integer(long long a, long long b) { return std::uniform_int_distribution<long long>(a, b)(engine_); }

    // Multiple of 1/1000 in [lo, hi].
    Rational rational(double lo, double hi) {
        return Rational(integer(static_cast<long long>(lo * 1000), static_cast<long long>(hi * 1000)), 1000);
    }

    Matrix2<Rational> positive_matrix_exact() {
        for (;;) {
            Matrix2<Rational> m{rational(0.1, 10), rational(0.1, 10), rational(0.1, 10), rational(0.1, 10)};
            if (m.det() > 0 && m.a + m.c != m.b + m.d) return m;
        }
    }

    Matrix2<double> positive_matrix() {
        for (;;) {
            Matrix2<double> m{uniform(0.1, 10), uniform(0.1, 10), uniform(0.1, 10), uniform(0.1, 10)};
            if (m.det() > 0) return m;
        }
    }

    BinaryWord word(std::size_t min_len, std::size_t max_len) {
        const auto n = static_cast<std::size_t>(integer(static_cast<long long>(min_len), static_cast<long long>(max_len)));
        BinaryWord w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<int>(integer(0, 1)));
        return w;
    }

    // A pair in class C built from a random D2-style member, then perturbed.
    MatrixPair<Rational> class_c_pair() {
        for (;;) {
            MatrixPair<Rational> p{positive_matrix_exact(), positive_matrix_exact()};
            if (sturmjsr::classify_pair(p).in_C) return p;
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// T_A through the projective action of A on the simplex point (x, 1 - x).
template <class T>
T projective_action(const Matrix2<T>& A, const T& x) {
    const T first = A.a * x + A.b * (T(1) - x);
    const T second = A.c * x + A.d * (T(1) - x);
    return first / (first + second);
}

// Largest eigenvalue modulus from the characteristic polynomial, in long double.
inline long double spectral_radius_oracle(const Matrix2<double>& A) {
    const long double tr = static_cast<long double>(A.a) + A.d;
    const long double det = static_cast<long double>(A.a) * A.d - static_cast<long double>(A.b) * A.c;
    const long double disc = tr * tr - 4 * det;
    if (disc < 0) return std::sqrt(det);
    const long double s = std::sqrt(disc);
    return std::max(std::fabs((tr + s) / 2), std::fabs((tr - s) / 2));
}

// log r of the exact rational product divided by the word length.
inline double exact_word_value(const MatrixPair<Rational>& pair, const Rational& t, const BinaryWord& w) {
    Matrix2<Rational> m{q(1), q(0), q(0), q(1)};
    for (std::size_t i = 0; i < w.size(); ++i) m = m * (w[i] ? pair.A1.scaled(t) : pair.A0);
    return std::log(sturmjsr::to_double(sturmjsr::spectral_radius(m))) / static_cast<double>(w.size());
}

}  // namespace fixtures
