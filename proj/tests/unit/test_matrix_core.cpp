#include <cmath>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace sturmjsr;
using fixtures::q;

TEST(ProjectiveData, ExampleA0ClosedForms) {
    const auto pd = projective_data(fixtures::example_pair().A0);
    EXPECT_EQ(pd.alpha, q(15, 28));
    EXPECT_EQ(pd.beta, q(-41, 112));
    EXPECT_EQ(pd.gamma, QuadSurd(q(7, 16)));
    EXPECT_EQ(pd.rho, QuadSurd(q(3, 4)));
    EXPECT_EQ(pd.sigma, q(-67, 60));
    EXPECT_EQ(pd.delta, q(9, 5));
    EXPECT_EQ(pd.fixed_point, QuadSurd(q(1, 15)));
    EXPECT_EQ(pd.perron_value, QuadSurd(q(1)));
    EXPECT_EQ(pd.minor_value, QuadSurd(q(9, 16)));
}

TEST(ProjectiveData, ExampleA1ClosedForms) {
    const auto pd = projective_data(fixtures::example_pair().A1);
    EXPECT_EQ(pd.alpha, q(-119, 128));
    EXPECT_EQ(pd.rho, QuadSurd(q(-8, 7)));
    EXPECT_EQ(pd.sigma, q(-8, 119));
    EXPECT_EQ(pd.fixed_point, QuadSurd(q(16, 17)));
    EXPECT_EQ(pd.perron_value, QuadSurd(q(1)));
    EXPECT_EQ(pd.minor_value, QuadSurd(q(13, 16)));
}

TEST(ProjectiveData, FixedPointRecheckedThroughProjectiveAction) {
    const auto pair = fixtures::example_pair();
    EXPECT_EQ(fixtures::projective_action(pair.A0, q(1, 15)), q(1, 15));
    EXPECT_EQ(fixtures::projective_action(pair.A1, q(16, 17)), q(16, 17));
}

TEST(ProjectiveData, RejectsNonPositiveInput) {
    EXPECT_THROW(projective_data(Matrix2<Rational>{q(1), q(0), q(1), q(1)}), error);
    EXPECT_THROW(projective_data(Matrix2<Rational>{q(1), q(2), q(3), q(1)}), error);
    try {
        projective_data(Matrix2<double>{1, 1, 1, 1});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::non_positive_matrix);
    }
}

TEST(ProjectiveData, ExactInvariantsOnRandomMatrices) {
    fixtures::Rng rng(2024);
    for (int k = 0; k < 300; ++k) {
        const Matrix2<Rational> A = rng.positive_matrix_exact();
        const auto pd = projective_data(A);
        EXPECT_EQ(pd.gamma * pd.gamma - QuadSurd(pd.beta * pd.beta), QuadSurd(q(4) * A.b * pd.alpha));
        EXPECT_EQ(pd.perron_value, QuadSurd(A.b) / pd.fixed_point + QuadSurd(A.a - A.b));
        EXPECT_EQ(q_poly_eval(A, pd.rho), QuadSurd(q(0)));
        EXPECT_GT(pd.fixed_point, QuadSurd(q(0)));
        EXPECT_LT(pd.fixed_point, QuadSurd(q(1)));
        // T_A(p) = p, written over the common denominator.
        const QuadSurd p = pd.fixed_point;
        EXPECT_EQ(QuadSurd(A.a - A.b) * p + QuadSurd(A.b), p * (QuadSurd(pd.alpha) * p + QuadSurd(A.b + A.d)));
    }
}

TEST(ProjectiveData, FloatInvariantsOnRandomMatrices) {
    fixtures::Rng rng(7);
    for (int k = 0; k < 1000; ++k) {
        const Matrix2<double> A = rng.positive_matrix();
        const auto pd = projective_data(A);
        const double lhs = pd.gamma * pd.gamma - pd.beta * pd.beta;
        EXPECT_NEAR(lhs, 4 * A.b * pd.alpha, 1e-12 * std::max({1.0, pd.gamma * pd.gamma, pd.beta * pd.beta}));
        EXPECT_NEAR(q_poly_eval(A, pd.rho), 0.0, 1e-10 * std::max(1.0, std::abs(pd.alpha) * pd.rho * pd.rho));
        const double lambda = pd.perron_value;
        const auto& v = pd.perron_right;
        const auto& w = pd.perron_left;
        EXPECT_NEAR(A.a * v[0] + A.b * v[1], lambda * v[0], 1e-10 * lambda);
        EXPECT_NEAR(A.c * v[0] + A.d * v[1], lambda * v[1], 1e-10 * lambda);
        const double wn = std::abs(w[0]) + std::abs(w[1]);
        EXPECT_NEAR((w[0] * A.a + w[1] * A.c) / wn, lambda * w[0] / wn, 1e-10 * lambda);
        EXPECT_NEAR((w[0] * A.b + w[1] * A.d) / wn, lambda * w[1] / wn, 1e-10 * lambda);
        EXPECT_NEAR(lambda, A.b / pd.fixed_point + A.a - A.b, 1e-10 * lambda);
    }
}

TEST(ProjectiveData, DeltaOfPowersConvergesToRho) {
    fixtures::Rng rng(99);
    for (int k = 0; k < 20; ++k) {
        const Matrix2<Rational> A = rng.positive_matrix_exact();
        const auto pd = projective_data(A);
        const double ratio = to_double(pd.minor_value) / to_double(pd.perron_value);
        Matrix2<Rational> power = A;
        double ratio_k = ratio;
        while (ratio_k >= 1e-9) {
            power = power * power;
            ratio_k *= ratio_k;
        }
        const auto pk = projective_data(power);
        EXPECT_NEAR(to_double(pk.delta), to_double(pd.rho), 1e-8);
    }
}

TEST(SpectralRadius, Examples) {
    EXPECT_EQ(spectral_radius(Matrix2<Rational>{q(1), q(1), q(1), q(1)}), QuadSurd(q(2)));
    EXPECT_EQ(spectral_radius(fixtures::example_pair().A0), QuadSurd(q(1)));
    const QuadSurd golden = (QuadSurd(q(3)) + QuadSurd::sqrt(q(5))) / QuadSurd(q(2));
    EXPECT_EQ(spectral_radius(Matrix2<Rational>{q(2), q(1), q(1), q(1)}), golden);
    EXPECT_NEAR(spectral_radius(Matrix2<double>{2, 1, 1, 1}), (3 + std::sqrt(5.0)) / 2, 1e-15);
}

TEST(SpectralRadius, GeneralRealMatrices) {
    // Rotation by 90 degrees and a matrix with negative trace.
    EXPECT_NEAR(spectral_radius(Matrix2<double>{0, -1, 1, 0}), 1.0, 1e-15);
    EXPECT_NEAR(spectral_radius(Matrix2<double>{-3, 1, 0, 2}), 3.0, 1e-15);
    fixtures::Rng rng(5);
    for (int k = 0; k < 200; ++k) {
        const Matrix2<double> A{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const double oracle = static_cast<double>(fixtures::spectral_radius_oracle(A));
        EXPECT_NEAR(spectral_radius(A), oracle, 1e-12 * std::max(1.0, oracle));
    }
}

TEST(SpectralRadius, PerronIdentityThroughInducedDerivative) {
    fixtures::Rng rng(13);
    for (int k = 0; k < 1000; ++k) {
        const Matrix2<double> A = rng.positive_matrix();
        const auto pd = projective_data(A);
        const double den = pd.alpha * pd.fixed_point + A.b + A.d;
        const double derivative = A.det() / (den * den);
        const double r = spectral_radius(A);
        EXPECT_NEAR(r, std::sqrt(A.det() / derivative), 1e-10 * r);
    }
}

TEST(QPoly, Examples) {
    const auto pair = fixtures::example_pair();
    EXPECT_EQ(q_poly_eval(pair.A0, q(0)), q(-3, 112));
    EXPECT_EQ(q_poly_eval(pair.A1, q(3, 4)), q(-6095, 2048));
    EXPECT_LT(q_poly_eval(pair.A1, q(3, 4)), q(0));
    EXPECT_THROW(q_poly_eval(Matrix2<Rational>{q(1), q(0), q(1), q(1)}, q(0)), error);
}

TEST(WordProduct, ExampleTrace) {
    const auto pair = fixtures::example_pair();
    const auto prod = word_product(pair, q(1), BinaryWord("01"));
    EXPECT_EQ(prod.matrix.trace(), q(32707, 14336));
    EXPECT_EQ(prod.matrix.trace() - q(11, 8), q(12995, 14336));
    EXPECT_EQ(prod.log_scale, 0.0);
}

TEST(WordProduct, SingleLetterAndScaling) {
    const auto pair = fixtures::example_pair();
    const auto one = word_product(pair, q(1), BinaryWord("0"));
    EXPECT_EQ(one.matrix, pair.A0);
    EXPECT_EQ(one.log_scale, 0.0);
    const auto scaled = word_product(pair, q(2), BinaryWord("1"));
    EXPECT_EQ(scaled.matrix, pair.A1.scaled(q(2)));
    EXPECT_EQ(spectral_radius(scaled.matrix), QuadSurd(q(2)));
    const auto fp = to_double(pair);
    EXPECT_NEAR(log_spectral_radius(word_product(fp, 2.0, BinaryWord("1"))), std::log(2.0), 1e-15);
}

TEST(WordProduct, Errors) {
    const auto pair = to_double(fixtures::example_pair());
    EXPECT_THROW(word_product(pair, 1.0, BinaryWord("")), error);
    EXPECT_THROW(word_product(pair, 0.0, BinaryWord("0")), error);
    EXPECT_THROW(word_product(pair, -1.0, BinaryWord("0")), error);
}

TEST(WordProduct, NormalisedProductMatchesExactProduct) {
    const auto pair = fixtures::example_pair();
    const auto fp = to_double(pair);
    fixtures::Rng rng(17);
    for (int k = 0; k < 50; ++k) {
        const BinaryWord w = rng.word(1, 10);
        const double exact = fixtures::exact_word_value(pair, q(3, 2), w) * static_cast<double>(w.size());
        EXPECT_NEAR(log_spectral_radius(word_product(fp, 1.5, w)), exact, 1e-12);
    }
}

TEST(WordProduct, LongWordsDoNotOverflow) {
    const auto fp = to_double(fixtures::example_pair());
    const BinaryWord w = BinaryWord("1").repeated(5000);
    EXPECT_NEAR(log_spectral_radius(word_product(fp, 1e3, w)), 5000 * std::log(1e3), 1e-8);
}

TEST(WordProduct, CyclicInvariance) {
    const auto fp = to_double(fixtures::d2_example());
    fixtures::Rng rng(21);
    for (int k = 0; k < 100; ++k) {
        const BinaryWord w = rng.word(2, 24);
        const double base = log_spectral_radius(word_product(fp, 0.7, w));
        for (std::size_t r = 1; r < w.size(); ++r)
            EXPECT_NEAR(log_spectral_radius(word_product(fp, 0.7, w.rotated(r))), base, 1e-10 * std::max(1.0, std::abs(base)));
    }
}
