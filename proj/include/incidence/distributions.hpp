#pragma once

// Probability mass and upper-tail functions for the Poisson, negative
// binomial (geometric as shape 1) and hypergeometric distributions.
//
// Upper tails are summed directly in log space whenever they are small;
// 1 - CDF is only used when the tail is at least one half.

#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace incidence {

class poisson_params {
public:
    explicit poisson_params(double mean) : mean_(mean) {
        if (!(mean > 0.0) || std::isinf(mean))
            throw std::domain_error("poisson_params: mean must be positive and finite");
    }
    double mean() const noexcept { return mean_; }

private:
    double mean_;
};

// Counts of failures before the shape-th success. With shape = 1 this is
// the geometric distribution on {0, 1, ...}.
class neg_binomial_params {
public:
    neg_binomial_params(double shape, double success_prob)
        : shape_(shape), success_prob_(success_prob) {
        if (!(shape > 0.0) || std::isinf(shape))
            throw std::domain_error("neg_binomial_params: shape must be positive and finite");
        if (!(success_prob > 0.0 && success_prob < 1.0))
            throw std::domain_error("neg_binomial_params: success_prob must lie in (0, 1)");
    }
    double shape() const noexcept { return shape_; }
    double success_prob() const noexcept { return success_prob_; }

private:
    double shape_;
    double success_prob_;
};

// Urn with `population` items of which `successes` are marked; `draws`
// items are taken without replacement.
class hypergeom_params {
public:
    hypergeom_params(std::int64_t population, std::int64_t successes, std::int64_t draws)
        : population_(population), successes_(successes), draws_(draws) {
        if (population < 0 || successes < 0 || draws < 0)
            throw std::domain_error("hypergeom_params: counts must be nonnegative");
        if (successes > population)
            throw std::domain_error("hypergeom_params: successes exceed population");
        if (draws > population)
            throw std::domain_error("hypergeom_params: draws exceed population");
    }
    std::int64_t population() const noexcept { return population_; }
    std::int64_t successes() const noexcept { return successes_; }
    std::int64_t draws() const noexcept { return draws_; }

    std::int64_t support_min() const noexcept {
        return std::max<std::int64_t>(0, draws_ + successes_ - population_);
    }
    std::int64_t support_max() const noexcept { return std::min(draws_, successes_); }

    friend bool operator==(const hypergeom_params&, const hypergeom_params&) = default;

private:
    std::int64_t population_;
    std::int64_t successes_;
    std::int64_t draws_;
};

// ---------------------------------------------------------------- Poisson

inline log_value poisson_log_pmf(const poisson_params& p, std::int64_t k) {
    if (k < 0) return log_value::zero();
    const double kd = static_cast<double>(k);
    return {kd * std::log(p.mean()) - p.mean() - log_gamma(kd + 1.0)};
}

inline double poisson_pmf(const poisson_params& p, std::int64_t k) {
    return poisson_log_pmf(p, k).exp();
}

// P(N >= n). Uses P(N >= n) = P(n, mean), the regularized lower incomplete gamma.
inline double poisson_tail(const poisson_params& p, std::int64_t n) {
    if (n <= 0) return 1.0;
    return reg_lower_incomplete_gamma(static_cast<double>(n), p.mean());
}

// ------------------------------------------------------ negative binomial

inline log_value neg_binomial_log_pmf(const neg_binomial_params& p, std::int64_t k) {
    if (k < 0) return log_value::zero();
    const double r = p.shape();
    const double kd = static_cast<double>(k);
    return {log_gamma(kd + r) - log_gamma(r) - log_gamma(kd + 1.0) +
            r * std::log(p.success_prob()) + kd * std::log1p(-p.success_prob())};
}

inline double neg_binomial_pmf(const neg_binomial_params& p, std::int64_t k) {
    return neg_binomial_log_pmf(p, k).exp();
}

// P(N >= n).
inline double neg_binomial_tail(const neg_binomial_params& p, std::int64_t n) {
    if (n <= 0) return 1.0;
    const double q = 1.0 - p.success_prob();
    if (p.shape() == 1.0) return std::pow(q, static_cast<double>(n));

    const double r = p.shape();
    // Head mass via the pmf recursion pmf(k+1) = pmf(k) * q * (k + r) / (k + 1).
    double head = 0.0;
    double term = std::pow(p.success_prob(), r);
    for (std::int64_t k = 0; k < n; ++k) {
        head += term;
        term *= q * (static_cast<double>(k) + r) / static_cast<double>(k + 1);
    }
    if (head <= 0.5) return 1.0 - head;

    // Small tail: sum upward from n, scaled by pmf(n) so nothing underflows.
    const log_value start = neg_binomial_log_pmf(p, n);
    double scaled = 1.0;
    double sum = 0.0;
    const double mode = r > 1.0 ? (r - 1.0) * q / p.success_prob() : 0.0;
    for (std::int64_t k = n;; ++k) {
        sum += scaled;
        scaled *= q * (static_cast<double>(k) + r) / static_cast<double>(k + 1);
        if (static_cast<double>(k) > mode && scaled < sum * 1e-17) break;
        if (k - n > 10'000'000)
            throw std::runtime_error("neg_binomial_tail: tail summation did not converge");
    }
    return std::min(1.0, (start * log_value::of(sum)).exp());
}

// --------------------------------------------------------- hypergeometric

// Out-of-support k has probability zero.
inline log_value hypergeom_log_pmf(const hypergeom_params& p, std::int64_t k) {
    if (k < p.support_min() || k > p.support_max()) return log_value::zero();
    return {log_binomial(p.successes(), k) +
            log_binomial(p.population() - p.successes(), p.draws() - k) -
            log_binomial(p.population(), p.draws())};
}

inline double hypergeom_pmf(const hypergeom_params& p, std::int64_t k) {
    return hypergeom_log_pmf(p, k).exp();
}

// P(X >= k): the one-sided ("greater") exact p-value for an observed count k.
inline double hypergeom_tail(const hypergeom_params& p, std::int64_t k) {
    const auto lo = p.support_min();
    const auto hi = p.support_max();
    if (k <= lo) return 1.0;
    if (k > hi) return 0.0;
    log_value acc = log_value::zero();
    for (auto j = k; j <= hi; ++j) acc = acc + hypergeom_log_pmf(p, j);
    return std::min(1.0, acc.exp());
}

} // namespace incidence
