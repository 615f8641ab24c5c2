#pragma once

// JSON documents for scenarios, ward tables, single 2x2 tables and the
// incident ledger. Schema (format_version 1) is documented in
// docs/scenario-format.md. Integer fields must be JSON integers; unknown
// keys are rejected.

#include "case_data.hpp"
#include "errors.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

namespace incidence {

inline constexpr int scenario_format_version = 1;

namespace detail {

using json = nlohmann::json;

inline std::string child(const std::string& pointer, std::string_view key) {
    return pointer + "/" + std::string(key);
}

inline json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points at the offending character.
        std::size_t line = 1, column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw parse_error("malformed JSON", line, column);
    }
}

inline void expect_object(const json& j, const std::string& pointer,
                          std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw parse_error("expected an object", pointer);
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || a == key;
        if (!ok) throw parse_error("unknown key '" + key + "'", child(pointer, key));
    }
}

inline const json& require(const json& j, std::string_view key, const std::string& pointer) {
    auto it = j.find(std::string(key));
    if (it == j.end()) throw parse_error("missing key '" + std::string(key) + "'", pointer);
    return *it;
}

inline std::int64_t get_int(const json& j, std::string_view key, const std::string& pointer) {
    const auto& v = require(j, key, pointer);
    if (!v.is_number_integer()) throw parse_error("expected an integer", child(pointer, key));
    return v.get<std::int64_t>();
}

inline std::string get_string(const json& j, std::string_view key, const std::string& pointer) {
    const auto& v = require(j, key, pointer);
    if (!v.is_string()) throw parse_error("expected a string", child(pointer, key));
    return v.get<std::string>();
}

inline void check_version(const json& j) {
    const auto v = get_int(j, "format_version", "");
    if (v != scenario_format_version)
        throw parse_error("unsupported format_version " + std::to_string(v), "/format_version");
}

template <class Enum, class Parser>
Enum get_enum(const json& j, std::string_view key, const std::string& pointer, Parser parse) {
    auto text = get_string(j, key, pointer);
    if (auto e = parse(text)) return *e;
    throw parse_error("unrecognized value '" + text + "'", child(pointer, key));
}

inline json table_to_json(const contingency_table& t) {
    return json{{"suspect_with", t.suspect_with},
                {"suspect_without", t.suspect_without},
                {"others_with", t.others_with},
                {"others_without", t.others_without}};
}

inline contingency_table table_from_json(const json& j, const std::string& pointer) {
    expect_object(j, pointer, {"suspect_with", "suspect_without", "others_with", "others_without"});
    contingency_table t{get_int(j, "suspect_with", pointer), get_int(j, "suspect_without", pointer),
                        get_int(j, "others_with", pointer), get_int(j, "others_without", pointer)};
    try {
        t.validate();
    } catch (const std::domain_error& e) {
        throw validation_error(std::string(e.what()) + " at " + pointer);
    }
    return t;
}

inline json ward_to_json(const ward_record& w) {
    return json{{"ward", std::string(to_string(w.where))},
                {"variant", std::string(to_string(w.kind))},
                {"table", table_to_json(w.table)}};
}

inline ward_record ward_from_json(const json& j, const std::string& pointer) {
    expect_object(j, pointer, {"ward", "variant", "table"});
    return {get_enum<ward>(j, "ward", pointer, parse_ward),
            get_enum<variant>(j, "variant", pointer, parse_variant),
            table_from_json(require(j, "table", pointer), child(pointer, "table"))};
}

inline std::vector<ward_record> wards_from_json(const json& j, const std::string& pointer) {
    if (!j.is_array()) throw parse_error("expected an array", pointer);
    std::vector<ward_record> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(ward_from_json(j[i], pointer + "/" + std::to_string(i)));
    return out;
}

inline std::string date_to_string(const std::chrono::year_month_day& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

inline std::chrono::year_month_day date_from_string(const std::string& s,
                                                    const std::string& pointer) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3)
        throw parse_error("expected a YYYY-MM-DD date", pointer);
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}};
    if (!ymd.ok()) throw parse_error("invalid calendar date '" + s + "'", pointer);
    return ymd;
}

} // namespace detail

// ------------------------------------------------------------- scenario

inline std::string serialize_scenario(const case_scenario& s) {
    detail::json j{{"format_version", scenario_format_version},
                   {"name", s.name},
                   {"suspect_shifts", s.suspect_shifts},
                   {"suspect_incidents", s.suspect_incidents},
                   {"total_shifts", s.total_shifts},
                   {"total_incidents", s.total_incidents}};
    if (!s.wards.empty()) {
        auto arr = detail::json::array();
        for (const auto& w : s.wards) arr.push_back(detail::ward_to_json(w));
        j["wards"] = std::move(arr);
    }
    return j.dump(2) + "\n";
}

inline case_scenario load_scenario(std::string_view text) {
    using namespace detail;
    const auto j = parse_document(text);
    expect_object(j, "", {"format_version", "name", "suspect_shifts", "suspect_incidents",
                          "total_shifts", "total_incidents", "wards"});
    check_version(j);
    case_scenario s;
    s.name = j.contains("name") ? get_string(j, "name", "") : std::string("custom");
    s.suspect_shifts = get_int(j, "suspect_shifts", "");
    s.suspect_incidents = get_int(j, "suspect_incidents", "");
    s.total_shifts = get_int(j, "total_shifts", "");
    s.total_incidents = get_int(j, "total_incidents", "");
    if (j.contains("wards")) s.wards = wards_from_json(j["wards"], "/wards");
    s.validate();
    return s;
}

// ---------------------------------------------------------- ward tables

inline std::string serialize_ward_tables(const std::vector<ward_record>& wards) {
    auto arr = detail::json::array();
    for (const auto& w : wards) arr.push_back(detail::ward_to_json(w));
    return detail::json{{"format_version", scenario_format_version}, {"wards", arr}}.dump(2) +
           "\n";
}

inline std::vector<ward_record> load_ward_tables(std::string_view text) {
    using namespace detail;
    const auto j = parse_document(text);
    expect_object(j, "", {"format_version", "wards"});
    check_version(j);
    return wards_from_json(require(j, "wards", ""), "/wards");
}

// A single 2x2 table: {"format_version": 1, "table": {...}}.
inline std::string serialize_table(const contingency_table& t) {
    return detail::json{{"format_version", scenario_format_version},
                        {"table", detail::table_to_json(t)}}
               .dump(2) +
           "\n";
}

inline contingency_table load_table(std::string_view text) {
    using namespace detail;
    const auto j = parse_document(text);
    expect_object(j, "", {"format_version", "table"});
    check_version(j);
    return table_from_json(require(j, "table", ""), "/table");
}

// --------------------------------------------------------------- ledger

inline std::string serialize_ledger(const std::vector<ledger_entry>& ledger) {
    using detail::json;
    auto arr = json::array();
    for (const auto& e : ledger) {
        auto sets = json::array();
        for (auto s : e.in_sets) sets.push_back(std::string(to_string(s)));
        json row{{"label", e.label},
                 {"ward", std::string(to_string(e.where))},
                 {"verdict_2004", std::string(to_string(e.verdict_2004))},
                 {"in_sets", sets},
                 {"remark", e.remark},
                 {"multiplicity", e.multiplicity}};
        if (e.date) row["date"] = detail::date_to_string(*e.date);
        arr.push_back(std::move(row));
    }
    return json{{"format_version", scenario_format_version}, {"entries", arr}}.dump(2) + "\n";
}

inline std::vector<ledger_entry> load_ledger(std::string_view text) {
    using namespace detail;
    const auto j = parse_document(text);
    expect_object(j, "", {"format_version", "entries"});
    check_version(j);
    const auto& arr = require(j, "entries", "");
    if (!arr.is_array()) throw parse_error("expected an array", "/entries");
    std::vector<ledger_entry> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto p = "/entries/" + std::to_string(i);
        const auto& row = arr[i];
        expect_object(row, p, {"label", "date", "ward", "verdict_2004", "in_sets", "remark",
                               "multiplicity"});
        ledger_entry e;
        e.label = get_string(row, "label", p);
        if (row.contains("date")) e.date = date_from_string(get_string(row, "date", p), p + "/date");
        e.where = get_enum<ward>(row, "ward", p, parse_ward);
        e.verdict_2004 = get_enum<verdict>(row, "verdict_2004", p, parse_verdict);
        const auto& sets = require(row, "in_sets", p);
        if (!sets.is_array()) throw parse_error("expected an array", p + "/in_sets");
        for (std::size_t k = 0; k < sets.size(); ++k) {
            const auto sp = p + "/in_sets/" + std::to_string(k);
            if (!sets[k].is_string()) throw parse_error("expected a string", sp);
            auto s = parse_data_set(sets[k].get<std::string>());
            if (!s) throw parse_error("unrecognized data set", sp);
            e.in_sets.insert(*s);
        }
        e.remark = get_string(row, "remark", p);
        e.multiplicity = row.contains("multiplicity") ? get_int(row, "multiplicity", p) : 1;
        if (e.multiplicity < 1) throw validation_error("multiplicity must be positive at " + p);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace incidence
