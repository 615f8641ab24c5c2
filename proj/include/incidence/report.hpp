#pragma once

// Reproduction report and the text renderings used by the command-line
// tool (aligned table, CSV, JSON).

#include "case_data.hpp"
#include "exact_tests.hpp"
#include "format.hpp"
#include "mixture_model.hpp"
#include "reference_values.hpp"
#include "simulation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace incidence {

enum class output_format { table, csv, json };

inline std::optional<output_format> parse_output_format(std::string_view s) {
    if (s == "table") return output_format::table;
    if (s == "csv") return output_format::csv;
    if (s == "json" || s == "json-like") return output_format::json;
    return std::nullopt;
}

enum class tolerance_kind { absolute, relative };

struct report_entry {
    std::string section; // "analytic" or "simulation"
    std::string label;
    double computed;
    double reference;
    double tolerance;
    tolerance_kind kind = tolerance_kind::absolute;

    double deviation() const {
        const double d = std::abs(computed - reference);
        return kind == tolerance_kind::relative ? d / std::abs(reference) : d;
    }
    bool pass() const { return deviation() <= tolerance; } // NaN fails
};

struct reproduction_report {
    std::vector<report_entry> entries;

    bool all_pass() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const report_entry& e) { return e.pass(); });
    }
    std::size_t count(std::string_view section) const {
        return static_cast<std::size_t>(std::count_if(
            entries.begin(), entries.end(),
            [&](const report_entry& e) { return e.section == section; }));
    }
};

struct reproduce_inputs {
    std::vector<ward_record> wards = builtin_ward_tables();
    std::optional<case_scenario> ggj7; // overrides the aggregated GGJ7 scenario
    std::uint64_t seed = default_seed;
    std::uint64_t replications = reference::monte_carlo_replications; // 0 skips simulation
};

// Recomputes every reference quantity from case data. Throws
// validation_error when the ward tables cannot be aggregated.
inline reproduction_report reproduce(const reproduce_inputs& in) {
    namespace ref = reference;
    const auto corrected = select_variant(in.wards, variant::corrected);
    const auto ggj7 = in.ggj7 ? *in.ggj7 : aggregate(corrected, "GGJ7");
    const auto ggj13 = aggregate(corrected, "GGJ13");
    const auto jkz_original = find_ward_table(in.wards, "jkz-original");
    if (!jkz_original) throw validation_error("ward tables lack jkz-original");

    const auto m7 = ggj7.model();
    const auto m13 = ggj13.model();

    reproduction_report r;
    auto add = [&](std::string label, double computed, double reference, double tol,
                   tolerance_kind kind = tolerance_kind::absolute) {
        r.entries.push_back({"analytic", std::move(label), computed, reference, tol, kind});
    };

    add("expected count t*mu, GGJ7", expected_count(m7), ref::expected_count_ggj7,
        ref::expected_count_tolerance);
    add("P(N>=13), GGJ13", tail_probability(m13, 13), ref::ggj13_tail_13,
        ref::ggj13_tail_13_tolerance);
    const auto curve = make_tail_curve(m7, static_cast<std::int64_t>(ref::tail_curve_ggj7.size()));
    for (std::size_t i = 0; i < curve.size(); ++i) {
        std::string label = "P(N>=" + std::to_string(curve.k_values[i]) + "), GGJ7";
        if (curve.k_values[i] == 7) label += " (headline 0.13690)";
        add(std::move(label), curve.probabilities[i], ref::tail_curve_ggj7[i],
            ref::tail_curve_tolerance);
    }
    const auto rows = sensitivity_sweep(jkz_original->table,
                                        static_cast<std::int64_t>(ref::inverse_p_jkz_original.size()) - 1);
    for (const auto& row : rows)
        add("1/p, JKZ original, " + std::to_string(row.moved_out) + " moved out", row.inverse_p,
            static_cast<double>(ref::inverse_p_jkz_original[static_cast<std::size_t>(row.moved_out)]),
            ref::inverse_p_relative_tolerance, tolerance_kind::relative);
    add("rate ratio >= 2 between two nurses", rate_ratio_exceedance(2.0), ref::rate_ratio_2,
        ref::rate_ratio_tolerance);

    if (in.replications > 0) {
        auto mc = [&](std::string label, const sim_estimate& e, double target) {
            r.entries.push_back({"simulation", std::move(label), e.point, target,
                                 ref::monte_carlo_sigmas * e.std_error, tolerance_kind::absolute});
        };
        const sim_config<mixed_poisson_model> cfg7{in.replications, in.seed, m7};
        for (std::int64_t n : {1, 7, 13})
            mc("simulated P(N>=" + std::to_string(n) + "), GGJ7", simulate_mixture_tail(cfg7, n),
               tail_probability(m7, n));
        mc("simulated rate ratio >= 2", simulate_rate_ratio(cfg7, 2.0), rate_ratio_exceedance(2.0));
        if (auto jkz = find_ward_table(in.wards, "jkz-corrected")) {
            const sim_config<hypergeom_params> cfg{in.replications, in.seed,
                                                   jkz->table.null_distribution()};
            mc("simulated allocation, JKZ corrected", simulate_allocation(cfg, jkz->table.suspect_with),
               fisher_one_sided(jkz->table));
        }
    }
    return r;
}

// ------------------------------------------------------------ rendering

namespace detail {

inline std::string pad(std::string s, std::size_t width, bool left = true) {
    if (s.size() >= width) return s;
    return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

// Aligned plain-text table; first column left aligned, the rest right.
inline std::string render_columns(const std::vector<std::string>& header,
                                  const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) w[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], row[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) os << "  ";
            os << pad(cells[c], w[c], c == 0);
        }
        os << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (auto x : w) total += x;
    os << std::string(total + 2 * (w.size() - 1), '-') << '\n';
    for (const auto& row : rows) line(row);
    return os.str();
}

inline std::string render_csv(const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) os << (c ? "," : "") << csv_field(cells[c]);
        os << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    return os.str();
}

} // namespace detail

inline std::string render_report(const reproduction_report& r, output_format f) {
    using nlohmann::json;
    if (f == output_format::json) {
        json entries = json::array();
        for (const auto& e : r.entries)
            entries.push_back({{"section", e.section},
                               {"label", e.label},
                               {"computed", e.computed},
                               {"reference", e.reference},
                               {"tolerance", e.tolerance},
                               {"tolerance_kind", e.kind == tolerance_kind::relative ? "relative"
                                                                                     : "absolute"},
                               {"pass", e.pass()}});
        return json{{"reference_version", reference::version},
                    {"all_pass", r.all_pass()},
                    {"entries", entries}}
                   .dump(2) +
               "\n";
    }
    const std::vector<std::string> header = {"label",     "computed",       "reference",
                                             "tolerance", "tolerance_kind", "status"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : r.entries) {
        const char* kind = e.kind == tolerance_kind::relative ? "relative" : "absolute";
        rows.push_back({e.label, format_number(e.computed), format_number(e.reference),
                        format_number(e.tolerance), kind, e.pass() ? "PASS" : "FAIL"});
    }
    if (f == output_format::csv) {
        auto h = header;
        h.insert(h.begin(), "section");
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i].insert(rows[i].begin(), r.entries[i].section);
        return detail::render_csv(h, rows);
    }
    std::size_t passed = 0;
    for (const auto& e : r.entries) passed += e.pass() ? 1 : 0;
    return detail::render_columns(header, rows) + std::to_string(passed) + "/" +
           std::to_string(r.entries.size()) + " entries pass (" +
           std::to_string(r.count("analytic")) + " analytic, " +
           std::to_string(r.count("simulation")) + " simulation)\n";
}

inline std::string render_sensitivity(const std::vector<sensitivity_row>& rows, output_format f) {
    const std::vector<std::string> header = {"moved_out", "p_value", "inverse_p",
                                             "inverse_p_rounded"};
    if (f == output_format::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows)
            arr.push_back({{"moved_out", r.moved_out},
                           {"p_value", r.p_value},
                           {"inverse_p", r.inverse_p},
                           {"inverse_p_rounded", r.inverse_p_rounded()}});
        return nlohmann::json{{"rows", arr}}.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows)
        cells.push_back({std::to_string(r.moved_out), format_number(r.p_value),
                         format_number(r.inverse_p), std::to_string(r.inverse_p_rounded())});
    return f == output_format::csv ? detail::render_csv(header, cells)
                                   : detail::render_columns(header, cells);
}

inline std::string render_tail_curve(const tail_curve& curve, output_format f) {
    const std::vector<std::string> header = {"k", "probability"};
    if (f == output_format::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t i = 0; i < curve.size(); ++i)
            arr.push_back({{"k", curve.k_values[i]}, {"probability", curve.probabilities[i]}});
        return nlohmann::json{{"points", arr}}.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < curve.size(); ++i)
        cells.push_back({std::to_string(curve.k_values[i]), format_number(curve.probabilities[i])});
    return f == output_format::csv ? detail::render_csv(header, cells)
                                   : detail::render_columns(header, cells);
}

inline std::string render_consistency(const std::vector<consistency_check>& checks,
                                      output_format f) {
    const std::vector<std::string> header = {"check", "expected", "actual", "status"};
    if (f == output_format::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks)
            arr.push_back({{"check", c.subject},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"consistent", c.consistent()}});
        return nlohmann::json{{"checks", arr}}.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& c : checks)
        cells.push_back({c.subject, std::to_string(c.expected), std::to_string(c.actual),
                         c.consistent() ? "ok" : "MISMATCH"});
    return f == output_format::csv ? detail::render_csv(header, cells)
                                   : detail::render_columns(header, cells);
}

} // namespace incidence
