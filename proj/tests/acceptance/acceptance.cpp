// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"

using namespace sturmjsr;
using fixtures::q;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;

    void check(bool ok, const std::string& what) {
        if (ok) return;
        failures += (pass ? "" : "; ") + what;
        pass = false;
    }
};

const double golden = (3.0 - std::sqrt(5.0)) / 2;
const Rational interior_ts[] = {q(1, 2), q(1), q(2), q(4)};

void ac1(Outcome& o) {
    const auto pair = fixtures::example_pair();
    const auto e0 = real_eigenvalues(pair.A0), e1 = real_eigenvalues(pair.A1);
    o.check(e0 && e0->first == QuadSurd(q(1)) && e0->second == QuadSurd(q(9, 16)), "eigenvalues of A0 are not {1, 9/16}");
    o.check(e1 && e1->first == QuadSurd(q(1)) && e1->second == QuadSurd(q(13, 16)), "eigenvalues of A1 are not {1, 13/16}");
    const Rational excess = (pair.A0 * pair.A1).trace() - q(9, 16) - q(13, 16);
    o.check(excess == q(12995, 14336), "tr(A0A1) - l0 - l1 = " + to_string(excess));
    o.check(in_class_D(pair).in_D, "pair not in class D");
    o.detail << "tr(A0A1) - l0 - l1 = " << to_string(excess);
}

void ac2(Outcome& o) {
    fixtures::Rng rng(20201);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Matrix2<double> A = rng.positive_matrix();
        const auto pd = projective_data(A);
        const double slope = make_branch(A, pd).derivative(pd.fixed_point);
        const double r = static_cast<double>(fixtures::spectral_radius_oracle(A));
        worst = std::max(worst, std::abs(r - std::sqrt(A.det() / slope)) / r);
    }
    o.check(worst <= 1e-10, "relative error too large");
    o.detail << "1000 matrices, worst relative error " << worst;
}

void ac3(Outcome& o) {
    fixtures::Rng rng(20202);
    const MatrixPair<Rational> pairs[] = {fixtures::example_pair(), fixtures::d2_example()};
    const Rational scales[] = {q(1, 2), q(1), q(3)};
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const auto& pair = pairs[k % 2];
        const Rational& t = scales[rng.integer(0, 2)];
        const BinaryWord w = rng.word(1, 8);
        const double lhs = ergodic_average_f(induced_system(pair, t), w);
        worst = std::max(worst, std::abs(lhs - fixtures::exact_word_value(pair, t, w)));
    }
    o.check(worst <= 1e-10, "identity error too large");
    o.detail << "200 words, worst error " << worst;
}

void ac4(Outcome& o) {
    const auto pair = fixtures::example_pair();
    const auto th = thresholds(pair);
    o.check(th.t0 == QuadSurd(q(24, 77)), "t0 = " + th.t0.str());
    o.check(th.t1 == QuadSurd(q(61, 8)), "t1 = " + th.t1.str());
    const QuadSurd e0 = delta_extremal_ratio(pair, 0), e1 = delta_extremal_ratio(pair, 1);
    o.check(e0 == QuadSurd(q(77, 30)), "exp Delta(Gamma0) = " + e0.str());
    o.check(e1 == QuadSurd(q(32, 305)), "exp Delta(Gamma1) = " + e1.str());
    const Rational ratio = (pair.A0.a + pair.A0.c) / (pair.A1.b + pair.A1.d);
    o.check(QuadSurd(ratio) / e0 == th.t0 && QuadSurd(ratio) / e1 == th.t1, "exponential form does not close");
    o.detail << "t0 = " << th.t0.str() << ", t1 = " << th.t1.str() << ", e^Delta = " << e0.str() << " and " << e1.str();
}

void ac5(Outcome& o) {
    double worst_delta = 0.0, worst_phi = 0.0;
    for (const auto& pair : {fixtures::example_pair(), fixtures::d2_example()}) {
        const auto sys = to_float_system(induced_system(pair, q(1)));
        for (int i = 0; i < 2; ++i) {
            worst_delta = std::max(worst_delta, std::abs(delta_numeric(sys, i) - delta_extremal(sys, i)));
            for (int k = 0; k < 20; ++k) {
                const double z = k / 19.0;
                worst_phi = std::max(worst_phi, std::abs(phi_series(sys, i, z) - phi_extremal(sys, i, z)));
            }
        }
    }
    o.check(worst_delta <= 1e-8, "delta mismatch");
    o.check(worst_phi <= 1e-8, "phi mismatch");
    o.detail << "worst delta error " << worst_delta << ", worst phi error " << worst_phi;
}

void ac6(Outcome& o) {
    const auto pair = fixtures::example_pair();
    const auto low = jsr_lower_bruteforce(pair, q(1, 4), 12);
    const auto high = jsr_lower_bruteforce(pair, q(8), 12);
    o.check(low.argmax_word.str() == "0" && std::abs(low.lower) <= 1e-12, "t = 1/4 gave " + low.argmax_word.str());
    o.check(high.argmax_word.str() == "1" && std::abs(high.lower - std::log(8.0)) <= 1e-12,
            "t = 8 gave " + high.argmax_word.str());
    o.detail << "t = 1/4: \"" << low.argmax_word.str() << "\" value " << low.lower << "; t = 8: \""
             << high.argmax_word.str() << "\" value " << high.lower;
}

void ac7(Outcome& o) {
    const auto pair = fixtures::example_pair();
    for (const Rational& t : interior_ts) {
        const auto est = jsr_lower_bruteforce(pair, t, 12);
        const auto restricted = sturmian_restricted_max(pair, t, 50).first;
        const bool balanced = is_balanced(est.argmax_word);
        o.check(domination_check(pair, t) == Regime::Interior, "t = " + to_string(t) + " not interior");
        o.check(balanced, "t = " + to_string(t) + " argmax " + est.argmax_word.str() + " unbalanced");
        o.check(est.argmax_parameter && *est.argmax_parameter == restricted,
                "t = " + to_string(t) + " parameters differ");
        o.detail << "t=" << to_string(t) << ": " << est.argmax_word.str() << " -> " << restricted.str() << "  ";
    }
}

void ac8(Outcome& o) {
    const auto pair = fixtures::example_pair();
    for (const Rational& t : interior_ts) {
        const auto rep = certify(pair, t);
        const double value = sturmian_restricted_max(pair, t, 50).second;
        const std::string at = "t = " + to_string(t);
        o.check(rep.verdict == Verdict::Certified, at + " not certified");
        o.check(rep.flatness <= 1e-6, at + " flatness");
        o.check(rep.exterior_margin > 0.0, at + " margin");
        o.check(rep.monotone_ok, at + " monotonicity");
        o.check(std::abs(rep.constant_value - value) <= 2e-6, at + " constant value");
        o.detail << "t=" << to_string(t) << " flat " << rep.flatness << " margin " << rep.exterior_margin << "  ";
    }
}

void ac9(Outcome& o) {
    const auto pair = fixtures::example_pair();
    const double t0 = 24.0 / 77, t1 = 61.0 / 8;
    const auto samples = staircase_scan(pair, t0 / 2, 2 * t1, 200, 40);
    bool monotone = true;
    for (std::size_t i = 1; i < samples.size(); ++i) monotone = monotone && samples[i - 1].parameter <= samples[i].parameter;
    o.check(monotone, "scan not monotone");
    o.check(samples.front().parameter == RationalParameter(0, 1), "scan does not start at 0/1");
    o.check(samples.back().parameter == RationalParameter(1, 1), "scan does not end at 1/1");
    const auto half = plateau_bounds(pair, {1, 2}, 1e-6, 50);
    const double width = half.t_hi - half.t_lo;
    o.check(width > 1e-4, "1/2 plateau too narrow");
    std::vector<double> widths;
    for (const std::int64_t den : {10, 20, 40}) {
        const auto rep = counterexample_search(pair, SearchTarget{golden, "golden"}, 1e-12, den);
        widths.push_back(rep.t_hi - rep.t_lo);
    }
    o.check(widths[0] > widths[1] && widths[1] > widths[2] && widths[2] > 0, "golden bracket does not shrink");
    o.detail << "1/2 plateau width " << width << ", golden t-bracket widths " << widths[0] << " > " << widths[1]
             << " > " << widths[2];
}

void ac10(Outcome& o) {
    const std::pair<RationalParameter, const char*> listed[] = {
        {{1, 2}, "01"}, {{1, 3}, "001"}, {{2, 5}, "00101"}, {{3, 8}, "00100101"}, {{5, 13}, "0010010100101"}};
    for (const auto& [param, word] : listed) {
        const std::string got = mechanical_word(param).str();
        o.check(got == word, param.str() + " gave " + got);
    }
    o.detail << "five listed parameters";
}

void ac11(Outcome& o) {
    const auto pair = fixtures::example_pair();
    const auto th = thresholds(pair);
    fixtures::Rng rng(20211);
    for (int k = 0; k < 20; ++k) {
        const Rational t(rng.integer(1, 5000), rng.integer(1, 997));
        const auto scaled = thresholds(scale_pair(pair, t));
        o.check(scaled.t0 * QuadSurd(t) == th.t0 && scaled.t1 * QuadSurd(t) == th.t1, "fails at t = " + to_string(t));
    }
    o.detail << "20 random rational t";
}

void ac12(Outcome& o) {
    fixtures::Rng rng(20212);
    bool scale_ok = true;
    for (const auto& pair : {fixtures::example_pair(), fixtures::d2_example()}) {
        const bool base = classify_pair(pair).in_D;
        for (int k = 0; k < 20; ++k) scale_ok = scale_ok && classify_pair(scale_pair(pair, rng.rational(0.01, 100))).in_D == base;
    }
    o.check(scale_ok, "in_D changes under scale_pair");

    double worst = 0.0;
    const auto pair = to_double(fixtures::example_pair());
    for (int k = 0; k < 20; ++k) {
        const Matrix2<double> P{rng.uniform(0.1, 10), 0, 0, rng.uniform(0.1, 10)};
        const auto conj = similarity_transform(pair, P, 1.0, 1.0);
        for (int i = 0; i < 2; ++i)
            worst = std::max(worst, std::abs(projective_data(conj[i]).rho - projective_data(pair[i]).rho));
    }
    o.check(worst <= 1e-9, "rho is not invariant under positive-diagonal similarity");
    o.detail << "in_D stable under scaling: " << (scale_ok ? "yes" : "no") << ", worst rho change under diagonal similarity " << worst;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"AC1 worked example", ac1},          {"AC2 Perron identity", ac2},
        {"AC3 ergodic-average identity", ac3}, {"AC4 thresholds", ac4},
        {"AC5 transfer series", ac5},          {"AC6 domination regimes", ac6},
        {"AC7 Sturmian optimality", ac7},      {"AC8 certificate", ac8},
        {"AC9 staircase", ac9},                {"AC10 mechanical words", ac10},
        {"AC11 threshold scaling", ac11},      {"AC12 classifier invariance", ac12},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            run(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        failures += !o.pass;
        std::printf("[%s] %s: %s", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
        if (!o.pass) std::printf(" | failed: %s", o.failures.c_str());
        std::printf("\n");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
