// How the tail P(N >= 7) for the GGJ7 exposure moves with the gamma shape.
// Small shapes mean strongly varying intensities across nurses; large
// shapes approach the plain Poisson tail.

#include <incidence/incidence.hpp>

#include <iostream>

int main() {
    using namespace incidence;
    const auto s = builtin_scenario("GGJ7");
    const double poisson = poisson_tail(poisson_params(expected_count(s.model())), 7);

    std::cout << "rho        P(N>=7)        variance\n";
    for (double rho : {0.25, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 1e4}) {
        const auto m = s.model(rho);
        std::cout << format_number(rho, 6) << "\t" << format_number(tail_probability(m, 7), 8)
                  << "\t" << format_number(count_variance(m), 8) << '\n';
    }
    std::cout << "poisson\t" << format_number(poisson, 8) << "\t"
              << format_number(expected_count(s.model()), 8) << '\n';
}
