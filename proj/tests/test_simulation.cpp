#include <incidence/exact_tests.hpp>
#include <incidence/simulation.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace incidence;

namespace {

const auto ggj7 = mixed_poisson_model::from_counts(26, 1734, 203);
constexpr std::uint64_t reps = 1'000'000;
constexpr double sigmas = 4.0;

void expect_within(const sim_estimate& e, double target) {
    EXPECT_LE(e.z_score(target), sigmas)
        << "estimate " << e.point << " +- " << e.std_error << " vs " << target;
}

} // namespace

TEST(SimStream, UniformIsOpenInterval) {
    sim_stream s(1, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(SimStream, GammaMoments) {
    for (double shape : {0.4, 1.0, 2.5, 9.0}) {
        sim_stream s(7, 3);
        const double scale = 0.7;
        const int n = 400000;
        double sum = 0, sum2 = 0;
        for (int i = 0; i < n; ++i) {
            const double x = s.gamma(shape, scale);
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        const double var = sum2 / n - mean * mean;
        const double true_mean = shape * scale;
        const double true_var = shape * scale * scale;
        EXPECT_NEAR(mean, true_mean, sigmas * std::sqrt(true_var / n)) << shape;
        EXPECT_NEAR(var, true_var, 0.02 * true_var) << shape;
    }
}

TEST(SimulateMixtureTail, AgreesWithClosedForm) {
    const sim_config<mixed_poisson_model> cfg{reps, default_seed, ggj7};
    for (int n : {1, 7, 13}) expect_within(simulate_mixture_tail(cfg, n), tail_probability(ggj7, n));
    expect_within(simulate_mixture_tail(cfg, 7), 0.13690);
    const double tm = expected_count(ggj7);
    expect_within(simulate_mixture_tail(cfg, 1), tm / (1.0 + tm));
}

TEST(SimulateMixtureTail, GeneralShape) {
    const mixed_poisson_model m(2.5, 26.0 / 1734.0, 203.0);
    const sim_config<mixed_poisson_model> cfg{reps, 99, m};
    for (int n : {2, 6}) expect_within(simulate_mixture_tail(cfg, n), tail_probability(m, n));
}

TEST(SimulateMixtureTail, ZeroThreshold) {
    const auto e = simulate_mixture_tail({10, 1, ggj7}, 0);
    EXPECT_EQ(e.point, 1.0);
    EXPECT_EQ(e.std_error, 0.0);
}

TEST(SimulateMixtureTail, ReproducibleAndPartitionIndependent) {
    sim_config<mixed_poisson_model> cfg{300'000, 12345, ggj7, 1};
    const auto a = simulate_mixture_tail(cfg, 5);
    cfg.threads = 4;
    const auto b = simulate_mixture_tail(cfg, 5);
    EXPECT_EQ(a.point, b.point);
    EXPECT_EQ(a.std_error, b.std_error);
    cfg.seed = 12346;
    EXPECT_NE(simulate_mixture_tail(cfg, 5).point, a.point);
}

TEST(SimulateMixtureMoments, MeanAndVariance) {
    const auto m = simulate_mixture_moments({reps, default_seed, ggj7});
    EXPECT_NEAR(m.mean, 3.04383, sigmas * m.mean_std_error);
    EXPECT_NEAR(m.mean, expected_count(ggj7), sigmas * m.mean_std_error);
    EXPECT_NEAR(m.variance, count_variance(ggj7), sigmas * m.variance_std_error);
    EXPECT_GT(m.variance, m.mean);
}

TEST(SimulateRateRatio, Values) {
    const sim_config<mixed_poisson_model> cfg{reps, default_seed, ggj7};
    expect_within(simulate_rate_ratio(cfg, 2.0), 2.0 / 3.0);
    expect_within(simulate_rate_ratio(cfg, 5.0), 1.0 / 3.0);
    expect_within(simulate_rate_ratio(cfg, 5.0), rate_ratio_exceedance(5.0));
    const auto one = simulate_rate_ratio(cfg, 1.0);
    EXPECT_EQ(one.point, 1.0);
    EXPECT_EQ(one.std_error, 0.0);
}

TEST(SimulateRateRatio, RequiresExponentialIntensities) {
    const sim_config<mixed_poisson_model> cfg{100, 1, mixed_poisson_model(2.0, 0.01, 100.0)};
    EXPECT_THROW(simulate_rate_ratio(cfg, 2.0), unsupported_configuration);
}

TEST(SimulateAllocation, SmallUrn) {
    const hypergeom_params p(20, 5, 6);
    expect_within(simulate_allocation({reps, default_seed, p}, 3), hypergeom_tail(p, 3));
    const auto zero = simulate_allocation({10, 1, p}, 0);
    EXPECT_EQ(zero.point, 1.0);
}

TEST(SimulateAllocation, JkzCorrected) {
    const contingency_table t{7, 135, 4, 883};
    const auto e = simulate_allocation({reps, default_seed, t.null_distribution()}, t.suspect_with);
    expect_within(e, fisher_one_sided(t));
}

TEST(SimulateAllocation, SamplerDistribution) {
    // Every support point's frequency, not just the tail.
    const hypergeom_params p(30, 9, 12);
    sim_stream s(5, 0);
    std::vector<int> counts(10, 0);
    const int n = 200000;
    for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(s.hypergeometric(p))];
    for (int k = 0; k <= 9; ++k) {
        const double pk = hypergeom_pmf(p, k);
        EXPECT_NEAR(counts[static_cast<std::size_t>(k)] / double(n), pk,
                    sigmas * std::sqrt(pk * (1 - pk) / n) + 1e-12)
            << k;
    }
}
