#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "sturmjsr/binary_word.hpp"
#include "sturmjsr/classify.hpp"
#include "sturmjsr/errors.hpp"
#include "sturmjsr/matrix_core.hpp"
#include "sturmjsr/projective_dynamics.hpp"
#include "sturmjsr/sturmian_words.hpp"

namespace sturmjsr {

// Values closer than this count as ties in argmax searches.
inline constexpr double tie_tolerance = 1e-12;

struct JsrEstimate {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    BinaryWord argmax_word;
    std::optional<RationalParameter> argmax_parameter;
    std::size_t max_length = 0;
};

// Calls visit(word) for every Lyndon word over {0,1} of length 1..max_len in
// lexicographic order (Duval's generation), i.e. one primitive representative
// per necklace.
template <class Visit>
void for_each_lyndon_word(std::size_t max_len, Visit&& visit) {
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        BinaryWord word;
        for (int s : w) word.push_back(s);
        visit(word);
        const std::size_t m = w.size();
        while (w.size() < max_len) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == 1) w.pop_back();
    }
}

template <Scalar T>
double log_word_value(const MatrixPair<T>& pair, const T& t, const BinaryWord& w) {
    return log_spectral_radius(word_product(pair, t, w)) / static_cast<double>(w.size());
}

template <Scalar T>
JsrEstimate jsr_lower_bruteforce(const MatrixPair<T>& pair, const T& t, std::size_t max_len) {
    if (max_len < 1) throw error(errc::invalid_argument, "max_len must be at least 1");
    if (sign(t) <= 0) throw error(errc::non_positive_scale, "scale t must be positive");
    if (!entries_positive(pair.A0) || !entries_positive(pair.A1))
        throw error(errc::non_positive_matrix, "brute force needs positive matrices");
    const MatrixPair<double> fp = to_double(pair);
    const double ft = to_double(t);

    JsrEstimate est;
    est.max_length = max_len;
    for_each_lyndon_word(max_len, [&](const BinaryWord& w) {
        const double v = log_word_value(fp, ft, w);
        const bool better = v > est.lower + tie_tolerance;
        const bool tie = std::abs(v - est.lower) <= tie_tolerance;
        if (est.argmax_word.empty() || better || (tie && w < est.argmax_word)) {
            est.lower = v;
            est.argmax_word = w;
        }
    });
    if (is_balanced(est.argmax_word))
        est.argmax_parameter = RationalParameter::reduced(static_cast<std::int64_t>(est.argmax_word.ones()),
                                                          static_cast<std::int64_t>(est.argmax_word.size()));
    return est;
}

namespace detail {

inline std::array<double, 2> left_perron(const Matrix2<double>& m) {
    const double gamma = std::sqrt((m.a - m.d) * (m.a - m.d) + 4.0 * m.b * m.c);
    const std::array<double, 2> w{m.a - m.d + gamma, 2.0 * m.b};
    const double s = w[0] + w[1];
    return {w[0] / s, w[1] / s};
}

}  // namespace detail

// Upper bound on log r from norms of all products up to max_len. The bound is
// the best over the entrywise-sum norm and weighted l1 operator norms whose
// weights are left Perron vectors of short Lyndon-word products; each of these
// norms is submultiplicative, so every candidate is a valid bound.
template <Scalar T>
double jsr_upper_norm(const MatrixPair<T>& pair, const T& t, std::size_t max_len) {
    if (max_len < 1) throw error(errc::invalid_argument, "max_len must be at least 1");
    if (sign(t) <= 0) throw error(errc::non_positive_scale, "scale t must be positive");
    if (!entries_positive(pair.A0) || !entries_positive(pair.A1))
        throw error(errc::non_positive_matrix, "norm bound needs positive matrices");
    const MatrixPair<double> fp = to_double(pair);
    const double ft = to_double(t);
    const std::array<Matrix2<double>, 2> gens{fp.A0, fp.A1.scaled(ft)};

    std::vector<std::array<double, 2>> weights;
    for_each_lyndon_word(std::min<std::size_t>(max_len, 6), [&](const BinaryWord& w) {
        weights.push_back(detail::left_perron(word_product(fp, ft, w).matrix));
    });
    const std::size_t norms = weights.size() + 1;

    auto log_norm = [&](const Matrix2<double>& m, std::size_t k) {
        if (k == 0) return std::log(m.a + m.b + m.c + m.d);
        const auto& w = weights[k - 1];
        const double col0 = (w[0] * m.a + w[1] * m.c) / w[0];
        const double col1 = (w[0] * m.b + w[1] * m.d) / w[1];
        return std::log(std::max(col0, col1));
    };

    // best[n][k] = max over words of length n of log ||product||_k.
    std::vector<std::vector<double>> best(max_len + 1,
                                          std::vector<double>(norms, -std::numeric_limits<double>::infinity()));
    std::function<void(const Matrix2<double>&, double, std::size_t)> walk =
        [&](const Matrix2<double>& m, double log_scale, std::size_t n) {
            for (std::size_t k = 0; k < norms; ++k) best[n][k] = std::max(best[n][k], log_scale + log_norm(m, k));
            if (n == max_len) return;
            for (const auto& g : gens) {
                Matrix2<double> next = m * g;
                const double s = std::max({next.a, next.b, next.c, next.d});
                walk(next.scaled(1.0 / s), log_scale + std::log(s), n + 1);
            }
        };
    for (const auto& g : gens) {
        const double s = std::max({g.a, g.b, g.c, g.d});
        walk(g.scaled(1.0 / s), std::log(s), 1);
    }

    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= max_len; ++n)
        for (std::size_t k = 0; k < norms; ++k) upper = std::min(upper, best[n][k] / static_cast<double>(n));
    return upper;
}

template <Scalar T>
double sturmian_value(const MatrixPair<T>& pair, const T& t, const RationalParameter& param) {
    return log_word_value(to_double(pair), to_double(t), mechanical_word(param));
}

template <Scalar T>
double ergodic_average_f(const InducedSystem<T>& sys, const BinaryWord& word) {
    if (word.empty()) throw error(errc::empty_word, "ergodic average needs a non-empty word");
    const InducedSystem<double> fs = to_float_system(sys);
    double sum = 0.0;
    for (std::size_t j = 0; j < word.size(); ++j) sum += f_eval(fs, periodic_point(fs, word.rotated(j)));
    return sum / static_cast<double>(word.size());
}

// Sturmian values at t = 1 for every parameter with denominator <= max_den.
// The value at scale t is value_1 + (p/q) log t, so one table serves every t.
class SturmianValueTable {
public:
    template <Scalar T>
    SturmianValueTable(const MatrixPair<T>& pair, std::int64_t max_den) : max_den_(max_den) {
        if (max_den < 1) throw error(errc::invalid_argument, "max_den must be at least 1");
        const MatrixPair<double> fp = to_double(pair);
        // Ascending denominator, then numerator: the tie-break order.
        for (std::int64_t q = 1; q <= max_den; ++q)
            for (std::int64_t p = 0; p <= q; ++p)
                if (std::gcd(p, q) == 1) {
                    const RationalParameter r(p, q);
                    entries_.push_back({r, log_word_value(fp, 1.0, mechanical_word(r))});
                }
    }

    // With interior_only the endpoints 0/1 and 1/1 are skipped (needs max_den >= 2).
    std::pair<RationalParameter, double> argmax(double log_t, bool interior_only = false) const {
        const std::size_t first = interior_only ? 2 : 0;
        if (first >= entries_.size()) throw error(errc::invalid_argument, "no interior parameter below max_den");
        std::size_t best = first;
        double best_value = value(entries_[first], log_t);
        for (std::size_t i = first + 1; i < entries_.size(); ++i) {
            const double v = value(entries_[i], log_t);
            if (v > best_value + tie_tolerance) {
                best = i;
                best_value = v;
            }
        }
        return {entries_[best].param, best_value};
    }

    std::int64_t max_den() const { return max_den_; }

    struct Entry {
        RationalParameter param;
        double value_at_one;
    };
    const std::vector<Entry>& entries() const { return entries_; }

private:
    static double value(const Entry& e, double log_t) { return e.value_at_one + e.param.value() * log_t; }

    std::int64_t max_den_;
    std::vector<Entry> entries_;
};

template <Scalar T>
void require_class_d(const MatrixPair<T>& pair, const Tolerance& tol = {}) {
    if (!classify_pair(pair, tol).in_D) throw error(errc::not_in_class_d, "pair is not in class D");
}

template <Scalar T>
std::pair<RationalParameter, double> sturmian_restricted_max(const MatrixPair<T>& pair, const T& t,
                                                             std::int64_t max_den) {
    if (sign(t) <= 0) throw error(errc::non_positive_scale, "scale t must be positive");
    require_class_d(pair);
    return SturmianValueTable(pair, max_den).argmax(std::log(to_double(t)));
}

}  // namespace sturmjsr
