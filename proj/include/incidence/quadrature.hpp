#pragma once

// Numerical integration of the mixture tail, independent of the closed
// form: P(N >= n) = E[ P(Poisson(L t) >= n) ] with L ~ Gamma(rho, mu / rho).
// Used as a cross-check only.

#include "distributions.hpp"
#include "mixture_model.hpp"
#include "numerics.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <cstdint>

namespace incidence {

struct quadrature_result {
    double value;
    double error_estimate;
};

inline quadrature_result tail_probability_by_quadrature(const mixed_poisson_model& m,
                                                        std::int64_t n,
                                                        double tolerance = 1e-13) {
    if (n <= 0) return {1.0, 0.0};
    // Integrate over u = L / scale, whose density is u^(rho-1) e^-u / Gamma(rho).
    const double rho = m.rho();
    const double scale = m.intensity_scale();
    const double log_norm = log_gamma(rho);
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double density = std::exp((rho - 1.0) * std::log(u) - u - log_norm);
        return reg_lower_incomplete_gamma(static_cast<double>(n), u * scale * m.t()) * density;
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    double error = 0.0;
    const double value = integrator.integrate(integrand, tolerance, &error);
    return {value, error};
}

} // namespace incidence
