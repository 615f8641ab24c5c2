// Load a scenario document (or use GGJ13), then print the model tail at the
// observed count, a Monte Carlo check and the exact-test sensitivity for
// each ward table it carries.

#include <incidence/incidence.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace incidence;
    try {
        const case_scenario s =
            argc > 1 ? load_scenario(read_file(argv[1])) : builtin_scenario("GGJ13");
        const auto m = s.model();
        const double p = tail_probability(m, s.suspect_incidents);
        const auto mc = simulate_mixture_tail({200'000, default_seed, m}, s.suspect_incidents);

        std::cout << s.name << ": t*mu = " << format_number(expected_count(m), 6) << ", P(N >= "
                  << s.suspect_incidents << ") = " << format_number(p, 6) << " (simulated "
                  << format_number(mc.point, 6) << " +- " << format_number(mc.std_error, 2)
                  << ")\n";

        for (const auto& w : s.wards) {
            std::cout << '\n' << w.slug() << '\n';
            const auto max_moved = std::min<std::int64_t>(3, w.table.others_without);
            std::cout << render_sensitivity(sensitivity_sweep(w.table, max_moved), output_format::table);
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
