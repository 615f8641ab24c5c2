#pragma once

// Gamma-mixed Poisson incident counts.
//
// A nurse's incident intensity L is Gamma distributed with shape rho and
// mean mu (scale mu / rho). Over an exposure of t shifts the count N is,
// given L = l, Poisson with mean l * t. Marginally N is negative binomial
// with shape rho and success probability 1 / (1 + t * mu / rho); for
// rho = 1 (exponential intensities) it is geometric and
//
//     P(N >= n) = (t mu / (1 + t mu))^n.

#include "distributions.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace incidence {

inline constexpr double default_rho = 1.0;

class mixed_poisson_model {
public:
    mixed_poisson_model(double rho, double mu, double t) : rho_(rho), mu_(mu), t_(t) {
        auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
        if (!positive(rho)) throw std::domain_error("mixed_poisson_model: rho must be positive");
        if (!positive(mu)) throw std::domain_error("mixed_poisson_model: mu must be positive");
        if (!positive(t)) throw std::domain_error("mixed_poisson_model: t must be positive");
    }

    // mu as the exact ratio incidents / shifts, divided once.
    static mixed_poisson_model from_counts(std::int64_t total_incidents,
                                           std::int64_t total_shifts, double t,
                                           double rho = default_rho) {
        if (total_shifts <= 0)
            throw std::domain_error("mixed_poisson_model: total shifts must be positive");
        return {rho, static_cast<double>(total_incidents) / static_cast<double>(total_shifts), t};
    }

    double rho() const noexcept { return rho_; }
    double mu() const noexcept { return mu_; }
    double t() const noexcept { return t_; }

    // Gamma scale of the intensity distribution.
    double intensity_scale() const noexcept { return mu_ / rho_; }

    // Negative binomial equivalent of the marginal count.
    neg_binomial_params marginal() const {
        return {rho_, 1.0 / (1.0 + t_ * mu_ / rho_)};
    }

private:
    double rho_;
    double mu_;
    double t_;
};

struct tail_curve {
    std::vector<std::int64_t> k_values;
    std::vector<double> probabilities;

    std::size_t size() const noexcept { return k_values.size(); }
};

struct variance_decomposition {
    double expected_conditional_variance; // E var(N | L) = t mu
    double variance_of_conditional_mean;  // var E(N | L) = (t mu)^2 / rho

    double total() const noexcept {
        return expected_conditional_variance + variance_of_conditional_mean;
    }
};

inline double expected_count(const mixed_poisson_model& m) noexcept { return m.t() * m.mu(); }

// P(N >= n) for one nurse with exposure t.
inline double tail_probability(const mixed_poisson_model& m, std::int64_t n) {
    if (n <= 0) return 1.0;
    if (m.rho() == 1.0) {
        const double tm = expected_count(m);
        return std::pow(tm / (1.0 + tm), static_cast<double>(n));
    }
    return neg_binomial_tail(m.marginal(), n);
}

inline tail_curve make_tail_curve(const mixed_poisson_model& m, std::int64_t k_max) {
    if (k_max < 1) throw std::domain_error("tail_curve: k_max must be at least 1");
    tail_curve curve;
    curve.k_values.reserve(static_cast<std::size_t>(k_max));
    curve.probabilities.reserve(static_cast<std::size_t>(k_max));
    for (std::int64_t k = 1; k <= k_max; ++k) {
        curve.k_values.push_back(k);
        curve.probabilities.push_back(tail_probability(m, k));
    }
    return curve;
}

// Law of total variance split of var(N).
inline variance_decomposition decompose_variance(const mixed_poisson_model& m) noexcept {
    const double tm = expected_count(m);
    return {tm, tm * tm / m.rho()};
}

inline double count_variance(const mixed_poisson_model& m) noexcept {
    return decompose_variance(m).total();
}

// For two independent exponential intensities L1, L2, the probability that
// one is at least k times the other: P(L1 >= k L2) + P(L2 >= k L1) = 2 / (k + 1).
inline double rate_ratio_exceedance(double k) {
    if (!(k >= 1.0))
        throw std::domain_error("rate_ratio_exceedance: ratio must be at least 1, got " +
                                std::to_string(k));
    if (std::isinf(k)) return 0.0;
    return 2.0 / (k + 1.0);
}

} // namespace incidence
