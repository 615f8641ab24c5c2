// incidence: command-line front end.
//
// Exit status: 0 success / all entries pass, 1 reproduction or data
// validation failure, 2 usage error.

#include <incidence/incidence.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace incidence;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct global_options {
    std::string format = "table";
    std::uint64_t seed = default_seed;
    std::uint64_t reps = reference::monte_carlo_replications;
    std::string scenario_file;
    bool quiet = false;

    output_format output() const {
        if (auto f = parse_output_format(format)) return *f;
        throw usage_error("unknown --format '" + format + "' (expected table, csv or json-like)");
    }
};

std::string builtin_table_names() {
    std::string names;
    for (const auto& w : builtin_ward_tables()) names += (names.empty() ? "" : ", ") + w.slug();
    return names;
}

// Built-in slug, or a path to a table/scenario document.
contingency_table resolve_table(const std::string& name) {
    if (auto w = find_ward_table(builtin_ward_tables(), name)) return w->table;
    if (std::filesystem::is_regular_file(name)) return load_table(read_file(name));
    throw usage_error("unknown table '" + name + "'; built-in tables: " + builtin_table_names());
}

case_scenario scenario_or_default(const global_options& g, const std::string& name = "GGJ7") {
    if (!g.scenario_file.empty()) return load_scenario(read_file(g.scenario_file));
    return builtin_scenario(name);
}

void print_estimate(const std::string& label, const sim_estimate& e, double analytic) {
    std::cout << label << ": " << format_number(e.point) << " (std error "
              << format_number(e.std_error, 6) << ", " << e.replications << " replications, "
              << format_number(e.z_score(analytic), 3) << " sigma from " << format_number(analytic)
              << ")\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heterogeneous incident-rate model, exact tests and reproduction checks"};
    app.require_subcommand(1);
    app.fallthrough();

    global_options g;
    app.add_option("--format", g.format, "Output format: table, csv or json-like");
    app.add_option("--seed", g.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--reps", g.reps, "Monte Carlo replications")->capture_default_str();
    app.add_option("--scenario", g.scenario_file, "Scenario document to use instead of GGJ7");
    app.add_flag("--quiet", g.quiet, "Suppress normal output");

    std::function<int()> run;

    // reproduce
    auto* reproduce_cmd = app.add_subcommand("reproduce", "Recompute every reference value");
    std::string wards_file;
    reproduce_cmd->add_option("--wards", wards_file, "Ward-table document replacing the built-ins");
    reproduce_cmd->callback([&] {
        run = [&] {
            reproduce_inputs in;
            if (!wards_file.empty()) in.wards = load_ward_tables(read_file(wards_file));
            if (!g.scenario_file.empty()) in.ggj7 = load_scenario(read_file(g.scenario_file));
            in.seed = g.seed;
            in.replications = g.reps;
            const auto report = reproduce(in);
            if (!g.quiet) std::cout << render_report(report, g.output());
            return report.all_pass() ? exit_ok : exit_failure;
        };
    });

    // tail
    auto* tail_cmd = app.add_subcommand("tail", "P(N >= n) under the mixed Poisson model");
    std::string mu_text;
    double t = 0.0, rho = default_rho;
    std::int64_t n = 0;
    bool cross_check = false;
    tail_cmd->add_option("--mu", mu_text, "Mean intensity per shift, decimal or fraction (26/1734)")
        ->required();
    tail_cmd->add_option("--t", t, "Exposure in shifts")->required();
    tail_cmd->add_option("--rho", rho, "Gamma shape")->capture_default_str();
    tail_cmd->add_option("--n", n, "Threshold count")->required();
    tail_cmd->add_flag("--cross-check", cross_check, "Also print quadrature and Monte Carlo values");
    tail_cmd->callback([&] {
        run = [&] {
            double mu = 0.0;
            try {
                mu = parse_rate(mu_text);
            } catch (const std::invalid_argument& e) {
                throw usage_error(std::string("--mu: ") + e.what());
            }
            if (n < 0) throw usage_error("--n must be nonnegative");
            const mixed_poisson_model m(rho, mu, t);
            const double p = tail_probability(m, n);
            if (g.quiet) return exit_ok;
            if (!cross_check) {
                std::cout << format_number(p) << '\n';
                return exit_ok;
            }
            const auto q = tail_probability_by_quadrature(m, n);
            std::cout << "closed form: " << format_number(p) << '\n'
                      << "quadrature:  " << format_number(q.value) << " (error estimate "
                      << format_number(q.error_estimate, 3) << ")\n";
            print_estimate("monte carlo", simulate_mixture_tail({g.reps, g.seed, m}, n), p);
            return exit_ok;
        };
    });

    // sensitivity
    auto* sens_cmd = app.add_subcommand("sensitivity", "Exact p-values with incidents moved to others");
    std::string table_name;
    std::int64_t max_moved = 8;
    sens_cmd->add_option("table", table_name, "Built-in table name or table document")->required();
    sens_cmd->add_option("--max-moved", max_moved, "Largest number of moved incidents")
        ->capture_default_str();
    sens_cmd->callback([&] {
        run = [&] {
            const auto rows = sensitivity_sweep(resolve_table(table_name), max_moved);
            if (!g.quiet) std::cout << render_sensitivity(rows, g.output());
            return exit_ok;
        };
    });

    // figure1
    auto* fig_cmd = app.add_subcommand("figure1", "Tail curve P(N >= k), k = 1..k_max");
    std::int64_t k_max = 14;
    double fig_rho = default_rho;
    fig_cmd->add_option("--k-max", k_max, "Largest k")->capture_default_str();
    fig_cmd->add_option("--rho", fig_rho, "Gamma shape")->capture_default_str();
    fig_cmd->callback([&] {
        run = [&] {
            if (k_max < 1) throw usage_error("--k-max must be at least 1");
            const auto curve = make_tail_curve(scenario_or_default(g).model(fig_rho), k_max);
            auto fmt = g.output();
            if (!g.quiet) std::cout << render_tail_curve(curve, fmt);
            return exit_ok;
        };
    });

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimates");
    sim_cmd->require_subcommand(1);
    auto* sim_mix = sim_cmd->add_subcommand("mixture", "P(N >= n) by sampling the mixture");
    std::int64_t sim_n = 7;
    double sim_rho = default_rho;
    sim_mix->add_option("--n", sim_n, "Threshold count")->capture_default_str();
    sim_mix->add_option("--rho", sim_rho, "Gamma shape")->capture_default_str();
    sim_mix->callback([&] {
        run = [&] {
            const auto m = scenario_or_default(g).model(sim_rho);
            const auto e = simulate_mixture_tail({g.reps, g.seed, m}, sim_n);
            if (!g.quiet) print_estimate("P(N>=" + std::to_string(sim_n) + ")", e, tail_probability(m, sim_n));
            return exit_ok;
        };
    });
    auto* sim_ratio = sim_cmd->add_subcommand("rate-ratio", "Two-nurse rate ratio exceedance");
    double ratio = 2.0;
    sim_ratio->add_option("--k", ratio, "Rate ratio")->capture_default_str();
    sim_ratio->callback([&] {
        run = [&] {
            const auto m = scenario_or_default(g).model();
            const auto e = simulate_rate_ratio({g.reps, g.seed, m}, ratio);
            if (!g.quiet) print_estimate("P(ratio>=" + format_number(ratio) + ")", e, rate_ratio_exceedance(ratio));
            return exit_ok;
        };
    });
    auto* sim_alloc = sim_cmd->add_subcommand("allocation", "Uniform shift allocation null");
    std::string alloc_table = "jkz-corrected";
    sim_alloc->add_option("--table", alloc_table, "Built-in table name or table document")
        ->capture_default_str();
    sim_alloc->callback([&] {
        run = [&] {
            const auto table = resolve_table(alloc_table);
            const auto e = simulate_allocation({g.reps, g.seed, table.null_distribution()},
                                               table.suspect_with);
            if (!g.quiet) print_estimate("P(X>=" + std::to_string(table.suspect_with) + ")", e, fisher_one_sided(table));
            return exit_ok;
        };
    });

    // scenario
    auto* scen_cmd = app.add_subcommand("scenario", "Scenario documents and case-data checks");
    scen_cmd->require_subcommand(1);
    auto* validate_cmd = scen_cmd->add_subcommand("validate", "Validate a document and cross-check case data");
    std::string validate_file;
    bool strict = false;
    validate_cmd->add_option("file", validate_file, "Scenario document (default: built-in data)");
    validate_cmd->add_flag("--strict", strict, "Exit 1 when any cross-check disagrees");
    validate_cmd->callback([&] {
        run = [&] {
            auto defs = builtin_scenario_definitions();
            if (!validate_file.empty()) {
                const auto s = load_scenario(read_file(validate_file));
                if (!g.quiet) std::cout << "document valid: " << s.name << '\n';
                defs = {{s, variant::corrected, false}};
                if (s.wards.empty()) return exit_ok;
            }
            const auto wards = validate_file.empty() ? builtin_ward_tables() : defs.front().declared.wards;
            const auto checks = check_consistency(builtin_ledger(), wards, defs);
            if (!g.quiet) std::cout << render_consistency(checks, g.output());
            const bool clean = std::all_of(checks.begin(), checks.end(),
                                           [](const consistency_check& c) { return c.consistent(); });
            return strict && !clean ? exit_failure : exit_ok;
        };
    });
    auto* show_cmd = scen_cmd->add_subcommand("show", "Print a built-in document");
    std::string show_what;
    show_cmd->add_option("what", show_what, "GGJ7, GGJ13, wards or ledger")->required();
    show_cmd->callback([&] {
        run = [&] {
            if (show_what == "wards")
                std::cout << serialize_ward_tables(builtin_ward_tables());
            else if (show_what == "ledger")
                std::cout << serialize_ledger(builtin_ledger());
            else if (show_what == "GGJ7" || show_what == "GGJ13")
                std::cout << serialize_scenario(builtin_scenario(show_what));
            else
                throw usage_error("unknown document '" + show_what + "' (GGJ7, GGJ13, wards, ledger)");
            return exit_ok;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        return run();
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    } catch (const std::logic_error& e) { // domain_error, out_of_range, unsupported_configuration
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
}
