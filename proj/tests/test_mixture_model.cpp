#include <incidence/mixture_model.hpp>
#include <incidence/quadrature.hpp>
#include <incidence/reference_values.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace incidence;

namespace {

const auto ggj7 = mixed_poisson_model::from_counts(26, 1734, 203);
const auto ggj13 = mixed_poisson_model::from_counts(30, 1734, 203);

// Independent of tail_probability_by_quadrature: Gauss-Kronrod over
// [0, inf) of P(Poisson(t l) >= n) (1/mu) e^(-l/mu), with the Poisson tail
// as a finite sum.
double exponential_mixture_tail_gk(const mixed_poisson_model& m, int n) {
    auto integrand = [&](double l) {
        const double x = m.t() * l;
        double term = std::exp(-x), head = 0.0;
        for (int k = 0; k < n; ++k) {
            head += term;
            term *= x / (k + 1);
        }
        double tail = 1.0 - head;
        if (x < n) {
            tail = 0.0;
            for (int k = n; term > 1e-18 * tail; ++k) {
                tail += term;
                term *= x / (k + 1);
            }
        }
        return tail * std::exp(-l / m.mu()) / m.mu();
    };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12, &err);
}

} // namespace

TEST(MixedPoissonModel, Validation) {
    EXPECT_THROW(mixed_poisson_model(0.0, 1.0, 1.0), std::domain_error);
    EXPECT_THROW(mixed_poisson_model(1.0, -1.0, 1.0), std::domain_error);
    EXPECT_THROW(mixed_poisson_model(1.0, 1.0, 0.0), std::domain_error);
    EXPECT_THROW(mixed_poisson_model::from_counts(1, 0, 1.0), std::domain_error);
    EXPECT_DOUBLE_EQ(ggj7.intensity_scale(), 26.0 / 1734.0);
    EXPECT_DOUBLE_EQ(mixed_poisson_model(4.0, 2.0, 1.0).intensity_scale(), 0.5);
}

TEST(ExpectedCount, Values) {
    EXPECT_NEAR(expected_count(ggj7), 3.04383, 1e-5);
    EXPECT_EQ(expected_count(mixed_poisson_model(5.0, 1.0, 1.0)), 1.0);
    EXPECT_NEAR(expected_count(ggj13), 203.0 * 30.0 / 1734.0, 1e-14);
    EXPECT_NEAR(expected_count(ggj13), 3.51211, 1e-5);
}

TEST(TailProbability, PublishedValues) {
    EXPECT_NEAR(tail_probability(ggj7, 7), 0.13690, 5e-6);
    EXPECT_NEAR(tail_probability(ggj13, 13), 0.03850, 5e-5);
    EXPECT_EQ(tail_probability(ggj7, 0), 1.0);
    EXPECT_EQ(tail_probability(mixed_poisson_model(2.5, 0.3, 7.0), 0), 1.0);
    EXPECT_NEAR(tail_probability(ggj7, 1), 0.75270964061608, 1e-10);
}

TEST(TailProbability, GeneralShapeUsesNegativeBinomial) {
    const mixed_poisson_model m(2.0, 0.01, 100.0);
    // Shape 2, success 2/3: 1 - sum_{k<3} (k+1) (2/3)^2 (1/3)^k = 1/9.
    EXPECT_NEAR(tail_probability(m, 3), 1.0 / 9.0, 1e-14);
}

TEST(TailProbability, GeometricIdentity) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> mus(1e-4, 0.2), ts(1.0, 2000.0);
    for (int i = 0; i < 200; ++i) {
        const mixed_poisson_model m(1.0, mus(rng), ts(rng));
        const double p1 = tail_probability(m, 1);
        for (int n = 1; n <= 30; ++n)
            EXPECT_NEAR(tail_probability(m, n), std::pow(p1, n), 1e-12);
    }
}

TEST(TailProbability, ClosedFormMatchesQuadrature) {
    for (int n = 1; n <= 20; ++n) {
        const double closed = tail_probability(ggj7, n);
        EXPECT_NEAR(closed, exponential_mixture_tail_gk(ggj7, n), 1e-8) << n;
        EXPECT_NEAR(closed, tail_probability_by_quadrature(ggj7, n).value, 1e-8) << n;
    }
}

TEST(TailProbability, GeneralShapeMatchesQuadrature) {
    for (double rho : {0.3, 0.5, 2.0, 5.0, 40.0}) {
        const mixed_poisson_model m(rho, 26.0 / 1734.0, 203.0);
        for (int n = 1; n <= 15; ++n)
            EXPECT_NEAR(tail_probability(m, n), tail_probability_by_quadrature(m, n).value, 1e-9)
                << rho << " " << n;
    }
}

TEST(TailCurve, PublishedBarHeights) {
    const auto c2 = make_tail_curve(ggj7, 2);
    ASSERT_EQ(c2.size(), 2u);
    EXPECT_NEAR(c2.probabilities[0], 0.75270964061608, 1e-10);
    EXPECT_NEAR(c2.probabilities[1], 0.56657180307639, 1e-10);

    const auto c14 = make_tail_curve(ggj7, 14);
    ASSERT_EQ(c14.size(), 14u);
    EXPECT_NEAR(c14.probabilities.back(), 0.01874065209741, 1e-10);
    for (std::size_t i = 0; i < 14; ++i) {
        EXPECT_EQ(c14.k_values[i], static_cast<std::int64_t>(i + 1));
        EXPECT_NEAR(c14.probabilities[i], reference::tail_curve_ggj7[i], 1e-10);
        if (i) { EXPECT_LT(c14.probabilities[i], c14.probabilities[i - 1]); }
    }

    const auto big = make_tail_curve(mixed_poisson_model(1.0, 1e6, 203.0), 1);
    EXPECT_GT(big.probabilities[0], 1.0 - 1e-8);
    EXPECT_THROW(make_tail_curve(ggj7, 0), std::domain_error);
}

TEST(CountVariance, Values) {
    EXPECT_NEAR(count_variance(ggj7), 3.04383 + 3.04383 * 3.04383, 1e-4);
    EXPECT_NEAR(count_variance(ggj7), 12.308726082196227, 1e-12);
    EXPECT_EQ(count_variance(mixed_poisson_model(1.0, 1.0, 1.0)), 2.0);
    const auto d = decompose_variance(ggj7);
    EXPECT_DOUBLE_EQ(d.expected_conditional_variance, expected_count(ggj7));
    EXPECT_DOUBLE_EQ(d.variance_of_conditional_mean, expected_count(ggj7) * expected_count(ggj7));
    // Degenerate mixing: the between-nurse component vanishes.
    EXPECT_LT(decompose_variance(mixed_poisson_model(1e12, 0.01, 100.0)).variance_of_conditional_mean, 1e-11);
}

TEST(CountVariance, Overdispersion) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> log_rho(std::log(0.01), std::log(1e4));
    std::uniform_real_distribution<double> mus(1e-4, 1.0), ts(1.0, 1000.0);
    for (int i = 0; i < 200; ++i) {
        const mixed_poisson_model m(std::exp(log_rho(rng)), mus(rng), ts(rng));
        EXPECT_GT(count_variance(m), expected_count(m));
    }
}

TEST(RateRatio, Values) {
    EXPECT_EQ(rate_ratio_exceedance(2.0), 2.0 / 3.0);
    EXPECT_EQ(rate_ratio_exceedance(1.0), 1.0);
    EXPECT_EQ(rate_ratio_exceedance(3.0), 0.5);
    EXPECT_THROW(rate_ratio_exceedance(0.5), std::domain_error);
}

TEST(RateRatio, MatchesIntegral) {
    // P(L1 >= k L2) = int_0^inf e^-y e^-(k y) dy = 1 / (k + 1) for unit
    // exponentials; doubled for either order.
    for (double k : {1.0, 1.5, 2.0, 7.0, 100.0}) {
        auto f = [k](double y) { return std::exp(-y) * std::exp(-k * y); };
        const double one_side = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, 0.0, std::numeric_limits<double>::infinity());
        EXPECT_NEAR(rate_ratio_exceedance(k), 2.0 * one_side, 1e-12) << k;
    }
}
