#pragma once

// Built-in case data: the incident ledger, the per-ward 2x2 shift tables
// (original and corrected), the two declared analysis scenarios, and the
// rules for turning ward tables into model inputs.

#include "errors.hpp"
#include "exact_tests.hpp"
#include "mixture_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace incidence {

enum class ward { jkz, rkz41, rkz42, leyenburg };
enum class variant { original, corrected };
enum class verdict { none, attempt, murder };
enum class data_set { e9, e8, e7, ggj7, ggj13 };

inline constexpr std::array all_wards = {ward::jkz, ward::rkz41, ward::rkz42, ward::leyenburg};
inline constexpr std::array all_data_sets = {data_set::e9, data_set::e8, data_set::e7,
                                             data_set::ggj7, data_set::ggj13};

inline std::string_view to_string(ward w) {
    switch (w) {
    case ward::jkz: return "JKZ";
    case ward::rkz41: return "RKZ-41";
    case ward::rkz42: return "RKZ-42";
    case ward::leyenburg: return "Leyenburg";
    }
    throw std::logic_error("bad ward");
}

inline std::string_view to_string(variant v) {
    return v == variant::original ? "original" : "corrected";
}

inline std::string_view to_string(verdict v) {
    switch (v) {
    case verdict::none: return "none";
    case verdict::attempt: return "attempt";
    case verdict::murder: return "murder";
    }
    throw std::logic_error("bad verdict");
}

inline std::string_view to_string(data_set s) {
    switch (s) {
    case data_set::e9: return "E9";
    case data_set::e8: return "E8";
    case data_set::e7: return "E7";
    case data_set::ggj7: return "GGJ7";
    case data_set::ggj13: return "GGJ13";
    }
    throw std::logic_error("bad data set");
}

namespace detail {
template <class Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view text, const std::array<Enum, N>& values) {
    for (auto v : values)
        if (to_string(v) == text) return v;
    return std::nullopt;
}
} // namespace detail

inline std::optional<ward> parse_ward(std::string_view s) {
    return detail::parse_enum(s, all_wards);
}
inline std::optional<variant> parse_variant(std::string_view s) {
    return detail::parse_enum(s, std::array{variant::original, variant::corrected});
}
inline std::optional<verdict> parse_verdict(std::string_view s) {
    return detail::parse_enum(s, std::array{verdict::none, verdict::attempt, verdict::murder});
}
inline std::optional<data_set> parse_data_set(std::string_view s) {
    return detail::parse_enum(s, all_data_sets);
}

// --------------------------------------------------------------- ledger

struct ledger_entry {
    std::string label;
    std::optional<std::chrono::year_month_day> date; // absent for aggregate rows
    ward where;
    verdict verdict_2004;
    std::set<data_set> in_sets;
    std::string remark;
    // Number of incidents the row stands for; only aggregate rows exceed 1.
    std::int64_t multiplicity = 1;

    bool in(data_set s) const { return in_sets.contains(s); }
    bool dropped() const { return remark.starts_with("Dropped"); }

    // "Amber(04/09/01)" style label as printed in the ledger.
    std::string display_name() const {
        if (!date) return label;
        auto two = [](unsigned v) {
            std::string s = std::to_string(v % 100);
            return s.size() < 2 ? "0" + s : s;
        };
        return label + "(" + two(static_cast<unsigned>(date->day())) + "/" +
               two(static_cast<unsigned>(date->month())) + "/" +
               two(static_cast<unsigned>(static_cast<int>(date->year()))) + ")";
    }

    friend bool operator==(const ledger_entry&, const ledger_entry&) = default;
};

inline std::vector<ledger_entry> builtin_ledger() {
    using namespace std::chrono;
    using enum data_set;
    const std::set<data_set> all{e9, e8, e7, ggj7, ggj13};
    const std::set<data_set> none;
    auto d = [](int y, unsigned m, unsigned day) {
        return std::optional<year_month_day>{year{y} / month{m} / std::chrono::day{day}};
    };
    return {
        {"Eda", d(2000, 9, 18), ward::jkz, verdict::attempt, none, "Dropped"},
        {"Ka I", d(2000, 10, 10), ward::jkz, verdict::none, none, "New, out"},
        {"Jouad", d(2000, 10, 10), ward::jkz, verdict::murder, all, ""},
        {"Ka II", d(2000, 10, 25), ward::jkz, verdict::murder, all, ""},
        {"Kemal I", d(2000, 10, 27), ward::jkz, verdict::none, {e9, e8, e7, ggj13}, ""},
        {"Kemal II", d(2000, 12, 20), ward::jkz, verdict::none, {e9, e8, e7, ggj13}, ""},
        {"Sadia", d(2001, 1, 17), ward::jkz, verdict::none, none, "Moved, out"},
        {"Achmad I", d(2001, 1, 25), ward::jkz, verdict::attempt, all, ""},
        {"Achmad II", d(2001, 2, 23), ward::jkz, verdict::murder, {e9, e8}, "Moved, out"},
        {"Kemal III", d(2001, 3, 2), ward::jkz, verdict::none, none, "New, out"},
        {"Sarah", d(2001, 4, 18), ward::jkz, verdict::none, {e9}, "Dropped"},
        {"Achraf", d(2001, 9, 1), ward::jkz, verdict::attempt, all, ""},
        {"Amber", d(2001, 9, 4), ward::jkz, verdict::murder, all, ""},
        {"Zonneveld", d(1997, 11, 27), ward::rkz41, verdict::murder, {ggj7, ggj13}, ""},
        {"Wang", d(1997, 11, 12), ward::rkz42, verdict::murder, {ggj7, ggj13}, ""},
        {"De Koning", d(1997, 5, 9), ward::leyenburg, verdict::murder, none, "Dropped"},
        {"Unknown RKZ-42", std::nullopt, ward::rkz42, verdict::none, {ggj13}, "Extra", 4},
    };
}

// Incidents flagged for a data set, aggregate rows counted by multiplicity.
inline std::int64_t count_in_set(const std::vector<ledger_entry>& ledger, data_set s) {
    std::int64_t n = 0;
    for (const auto& e : ledger)
        if (e.in(s)) n += e.multiplicity;
    return n;
}

// ---------------------------------------------------------- ward tables

struct ward_record {
    ward where;
    variant kind;
    contingency_table table;

    // CLI-facing name, e.g. "jkz-original".
    std::string slug() const {
        std::string w;
        for (char c : to_string(where))
            if (c != '-') w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return w + "-" + std::string(to_string(kind));
    }

    friend bool operator==(const ward_record&, const ward_record&) = default;
};

inline std::vector<ward_record> builtin_ward_tables() {
    return {
        {ward::jkz, variant::original, {8, 134, 0, 887}},
        {ward::jkz, variant::corrected, {7, 135, 4, 883}},
        {ward::rkz42, variant::original, {5, 53, 9, 272}},
        {ward::rkz42, variant::corrected, {1, 57, 9, 272}},
        {ward::rkz41, variant::original, {1, 0, 4, 361}},
        {ward::rkz41, variant::corrected, {1, 2, 4, 359}},
    };
}

inline std::vector<ward_record> select_variant(const std::vector<ward_record>& wards, variant v) {
    std::vector<ward_record> out;
    std::copy_if(wards.begin(), wards.end(), std::back_inserter(out),
                 [v](const ward_record& r) { return r.kind == v; });
    return out;
}

inline std::optional<ward_record> find_ward_table(const std::vector<ward_record>& wards,
                                                  std::string_view slug) {
    for (const auto& r : wards)
        if (r.slug() == slug) return r;
    return std::nullopt;
}

// ------------------------------------------------------------ scenarios

struct case_scenario {
    std::string name;
    std::int64_t suspect_shifts = 0;
    std::int64_t suspect_incidents = 0;
    std::int64_t total_shifts = 0;
    std::int64_t total_incidents = 0;
    std::vector<ward_record> wards; // optional supporting tables

    void validate() const {
        if (suspect_shifts <= 0)
            throw validation_error("scenario " + name + ": suspect_shifts must be positive");
        if (total_shifts <= 0)
            throw validation_error("scenario " + name + ": total_shifts must be positive");
        if (total_incidents <= 0)
            throw validation_error("scenario " + name + ": total_incidents must be positive");
        if (suspect_incidents < 0)
            throw validation_error("scenario " + name + ": suspect_incidents must be nonnegative");
        if (suspect_incidents > total_incidents)
            throw validation_error("scenario " + name +
                                       ": suspect_incidents exceeds total_incidents",
                                   total_incidents, suspect_incidents);
        if (suspect_shifts > total_shifts)
            throw validation_error("scenario " + name + ": suspect_shifts exceeds total_shifts",
                                   total_shifts, suspect_shifts);
        if (!wards.empty()) {
            std::int64_t shifts = 0, suspect = 0;
            for (const auto& w : wards) {
                w.table.validate();
                shifts += w.table.shifts();
                suspect += w.table.suspect_shifts();
            }
            if (shifts != total_shifts)
                throw validation_error("scenario " + name + ": ward tables' total shifts",
                                       total_shifts, shifts);
            if (suspect != suspect_shifts)
                throw validation_error("scenario " + name + ": ward tables' suspect shifts",
                                       suspect_shifts, suspect);
        }
    }

    // Suspect's count model: mu = total incidents / total shifts, t = suspect shifts.
    mixed_poisson_model model(double rho = default_rho) const {
        return mixed_poisson_model::from_counts(total_incidents, total_shifts,
                                                static_cast<double>(suspect_shifts), rho);
    }

    friend bool operator==(const case_scenario&, const case_scenario&) = default;
};

// Declared scenario constants. Incident counts are not derivable from the
// ward tables (the ledger's extra RKZ-42 incidents have no shift
// assignment), so only the checks listed in the definition are enforced.
struct scenario_definition {
    case_scenario declared;
    variant ward_variant;
    bool total_incidents_from_wards;
};

inline std::vector<scenario_definition> builtin_scenario_definitions() {
    return {
        {{"GGJ7", 203, 7, 1734, 26, {}}, variant::corrected, true},
        {{"GGJ13", 203, 13, 1734, 30, {}}, variant::corrected, false},
    };
}

inline const scenario_definition& find_scenario_definition(std::string_view name) {
    static const auto defs = builtin_scenario_definitions();
    for (const auto& d : defs)
        if (d.declared.name == name) return d;
    throw validation_error("unknown scenario '" + std::string(name) + "'");
}

// Combines one table per ward into the named scenario. Shift totals (and,
// where declared, the incident total) must agree with the definition;
// disagreement is an error, never reconciled.
inline case_scenario aggregate(const std::vector<ward_record>& wards,
                               std::string_view scenario_name) {
    if (wards.empty()) throw validation_error("aggregate: no ward tables supplied");
    const auto& def = find_scenario_definition(scenario_name);

    std::set<ward> seen;
    std::int64_t shifts = 0, suspect_shifts = 0, incidents = 0;
    for (const auto& w : wards) {
        if (!seen.insert(w.where).second)
            throw validation_error("aggregate: duplicate table for ward " +
                                   std::string(to_string(w.where)));
        if (w.kind != wards.front().kind)
            throw validation_error("aggregate: mixed original and corrected tables");
        w.table.validate();
        shifts += w.table.shifts();
        suspect_shifts += w.table.suspect_shifts();
        incidents += w.table.incidents();
    }

    const auto& s = def.declared;
    if (shifts != s.total_shifts)
        throw validation_error("aggregate " + s.name + ": total shifts", s.total_shifts, shifts);
    if (suspect_shifts != s.suspect_shifts)
        throw validation_error("aggregate " + s.name + ": suspect shifts", s.suspect_shifts,
                               suspect_shifts);
    if (def.total_incidents_from_wards && incidents != s.total_incidents)
        throw validation_error("aggregate " + s.name + ": total incidents", s.total_incidents,
                               incidents);
    auto out = s;
    out.validate();
    return out;
}

inline case_scenario builtin_scenario(std::string_view name) {
    const auto& def = find_scenario_definition(name);
    return aggregate(select_variant(builtin_ward_tables(), def.ward_variant), name);
}

// ---------------------------------------------------------- consistency

struct consistency_check {
    std::string subject;
    std::int64_t expected;
    std::int64_t actual;

    bool consistent() const noexcept { return expected == actual; }
};

// Cross-checks ledger, ward tables and declared scenarios. Disagreements are
// reported, not resolved.
inline std::vector<consistency_check> check_consistency(
    const std::vector<ledger_entry>& ledger, const std::vector<ward_record>& wards,
    const std::vector<scenario_definition>& scenarios) {
    std::vector<consistency_check> out;

    for (auto v : {variant::original, variant::corrected}) {
        const auto tables = select_variant(wards, v);
        if (tables.empty()) continue;
        std::int64_t shifts = 0, suspect_shifts = 0, incidents = 0, suspect_incidents = 0;
        for (const auto& w : tables) {
            shifts += w.table.shifts();
            suspect_shifts += w.table.suspect_shifts();
            incidents += w.table.incidents();
            suspect_incidents += w.table.suspect_with;
        }
        const std::string vname(to_string(v));
        for (const auto& def : scenarios) {
            const auto& s = def.declared;
            const std::string pre = s.name + " vs " + vname + " ward tables: ";
            out.push_back({pre + "total shifts", s.total_shifts, shifts});
            out.push_back({pre + "suspect shifts", s.suspect_shifts, suspect_shifts});
            if (v != def.ward_variant) continue;
            out.push_back({pre + "total incidents", s.total_incidents, incidents});
            out.push_back({pre + "suspect incidents", s.suspect_incidents, suspect_incidents});
        }
    }

    for (const auto& def : scenarios) {
        const auto& s = def.declared;
        if (auto set = parse_data_set(s.name))
            out.push_back({s.name + " vs ledger: flagged incidents", s.suspect_incidents,
                           count_in_set(ledger, *set)});
    }

    std::int64_t dropped_in_ggj = 0, ggj7_not_ggj13 = 0;
    for (const auto& e : ledger) {
        if (e.dropped() && (e.in(data_set::ggj7) || e.in(data_set::ggj13))) ++dropped_in_ggj;
        if (e.in(data_set::ggj7) && !e.in(data_set::ggj13)) ++ggj7_not_ggj13;
    }
    out.push_back({"ledger: dropped entries carrying a GGJ flag", 0, dropped_in_ggj});
    out.push_back({"ledger: GGJ7 entries missing from GGJ13", 0, ggj7_not_ggj13});
    return out;
}

} // namespace incidence
