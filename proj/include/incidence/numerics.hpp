#pragma once

// Special-function kernel: log-gamma, regularized incomplete gamma and
// log-binomial coefficients at double precision. Everything here is a pure
// function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace incidence {

// Natural log of a nonnegative quantity. -inf encodes zero.
struct log_value {
    double value = -std::numeric_limits<double>::infinity();

    static log_value zero() noexcept { return {}; }
    static log_value one() noexcept { return {0.0}; }
    static log_value of(double x) {
        if (!(x >= 0.0)) throw std::domain_error("log_value::of: negative or NaN input");
        return {std::log(x)};
    }

    double exp() const noexcept { return std::exp(value); }
    bool is_zero() const noexcept { return std::isinf(value) && value < 0; }

    friend log_value operator*(log_value a, log_value b) noexcept { return {a.value + b.value}; }
    friend log_value operator/(log_value a, log_value b) noexcept { return {a.value - b.value}; }
    friend bool operator<(log_value a, log_value b) noexcept { return a.value < b.value; }
};

inline log_value operator+(log_value a, log_value b) noexcept {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = std::max(a.value, b.value);
    const double lo = std::min(a.value, b.value);
    return {hi + std::log1p(std::exp(lo - hi))};
}

// log(sum(exp(terms))) without overflow or underflow of the individual terms.
inline log_value log_sum_exp(std::span<const log_value> terms) noexcept {
    double hi = -std::numeric_limits<double>::infinity();
    for (auto t : terms) hi = std::max(hi, t.value);
    if (std::isinf(hi)) return {hi};
    double acc = 0.0;
    for (auto t : terms) acc += std::exp(t.value - hi);
    return {hi + std::log(acc)};
}

// ln Gamma(x) for x > 0. Lanczos approximation with g = 671/128 and 14
// coefficients; relative error is a few ulp over the whole positive axis.
inline double log_gamma(double x) {
    if (!(x > 0.0) || std::isinf(x))
        throw std::domain_error("log_gamma: argument must be positive and finite, got " +
                                std::to_string(x));

    static constexpr std::array<double, 14> coefficients = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
        -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
        .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
        -.261908384015814087e-4, .368991826595316234e-5};

    // Exact small factorials keep log_gamma(1) and log_gamma(2) at exactly zero.
    if (x == 1.0 || x == 2.0) return 0.0;

    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double series = 0.999999999999997092;
    for (double c : coefficients) series += c / ++y;
    return tmp + std::log(2.5066282746310005 * series / x);
}

namespace detail {

inline constexpr int incomplete_gamma_max_iterations = 100000;
inline constexpr double incomplete_gamma_eps = 1e-16;

// P(a, x) by the power series; use for x < a + 1.
inline double lower_gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < incomplete_gamma_max_iterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * incomplete_gamma_eps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); use for x >= a + 1.
inline double upper_gamma_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / incomplete_gamma_eps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < incomplete_gamma_max_iterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < incomplete_gamma_eps) break;
    }
    return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

inline void check_incomplete_gamma_domain(double a, double x, const char* who) {
    if (!(a > 0.0) || std::isinf(a))
        throw std::domain_error(std::string(who) + ": shape must be positive and finite");
    if (!(x >= 0.0))
        throw std::domain_error(std::string(who) + ": argument must be nonnegative");
}

} // namespace detail

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double reg_lower_incomplete_gamma(double a, double x) {
    detail::check_incomplete_gamma_domain(a, x, "reg_lower_incomplete_gamma");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return std::clamp(detail::lower_gamma_series(a, x), 0.0, 1.0);
    return std::clamp(1.0 - detail::upper_gamma_fraction(a, x), 0.0, 1.0);
}

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly
// in whichever region avoids cancellation.
inline double reg_upper_incomplete_gamma(double a, double x) {
    detail::check_incomplete_gamma_domain(a, x, "reg_upper_incomplete_gamma");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return std::clamp(1.0 - detail::lower_gamma_series(a, x), 0.0, 1.0);
    return std::clamp(detail::upper_gamma_fraction(a, x), 0.0, 1.0);
}

// ln C(n, k).
inline double log_binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0)
        throw std::domain_error("log_binomial: arguments must be nonnegative");
    if (k > n)
        throw std::domain_error("log_binomial: k = " + std::to_string(k) + " exceeds n = " +
                                std::to_string(n));
    if (k == 0 || k == n) return 0.0;
    // Symmetric form so log_binomial(n, k) and log_binomial(n, n - k) are bit-identical.
    const auto lo = std::min(k, n - k);
    const auto hi = n - lo;
    if (lo <= 2048) {
        // sum of log((hi + i) / i)
        double sum = 0.0, comp = 0.0;
        for (std::int64_t i = 1; i <= lo; ++i) {
            const double term = std::log(static_cast<double>(hi + i) / static_cast<double>(i)) - comp;
            const double next = sum + term;
            comp = (next - sum) - term;
            sum = next;
        }
        return sum;
    }
    const auto dn = static_cast<double>(n);
    return log_gamma(dn + 1.0) - log_gamma(static_cast<double>(lo) + 1.0) -
           log_gamma(static_cast<double>(hi) + 1.0);
}

} // namespace incidence
