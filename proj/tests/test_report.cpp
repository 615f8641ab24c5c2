#include <incidence/report.hpp>
#include <incidence/scenario_io.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <clocale>

using namespace incidence;

TEST(Format, NumbersRoundTrip) {
    for (double v : {0.13689650140677, 1.0, 0.0, 1e-7, 9043863.980496801, 2.0 / 3.0}) {
        const auto s = format_number(v);
        EXPECT_EQ(parse_real(s), v) << s;
    }
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(0.75270964061608, 12), "0.752709640616");
}

TEST(Format, LocaleIndependent) {
    // Renderers must not pick up a decimal comma even if the C locale changes.
    const char* prev = std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
    EXPECT_EQ(format_number(0.25), "0.25");
    EXPECT_EQ(parse_real("0.25"), 0.25);
    if (prev) std::setlocale(LC_NUMERIC, "C");
}

TEST(Format, RateLiterals) {
    EXPECT_EQ(parse_rate("26/1734"), 26.0 / 1734.0);
    EXPECT_EQ(parse_rate("0.015"), 0.015);
    EXPECT_EQ(parse_rate("3/4"), 0.75);
    EXPECT_THROW(parse_rate("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rate("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rate("26/"), std::invalid_argument);
    EXPECT_THROW(parse_rate(""), std::invalid_argument);
}

TEST(Format, CsvQuoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
}

TEST(Reproduce, AnalyticEntriesAllPass) {
    reproduce_inputs in;
    in.replications = 0;
    const auto r = reproduce(in);
    EXPECT_EQ(r.count("analytic"), 26u);
    EXPECT_EQ(r.count("simulation"), 0u);
    for (const auto& e : r.entries) EXPECT_TRUE(e.pass()) << e.label << " " << e.computed;
    EXPECT_TRUE(r.all_pass());
}

TEST(Reproduce, CorruptedWardTableFails) {
    reproduce_inputs in;
    in.replications = 0;
    for (auto& w : in.wards)
        if (w.slug() == "jkz-original") {
            w.table.suspect_with = 7;
            w.table.suspect_without = 135;
        }
    const auto r = reproduce(in);
    EXPECT_FALSE(r.all_pass());
    std::size_t failed = 0;
    for (const auto& e : r.entries) {
        if (e.pass()) continue;
        ++failed;
        EXPECT_NE(e.label.find("JKZ original"), std::string::npos) << e.label;
    }
    EXPECT_EQ(failed, 9u);
}

TEST(Reproduce, CorruptedScenarioFails) {
    reproduce_inputs in;
    in.replications = 0;
    in.ggj7 = case_scenario{"GGJ7", 203, 7, 1734, 27, {}};
    EXPECT_FALSE(reproduce(in).all_pass());
}

TEST(Reproduce, UnaggregatableWardsThrow) {
    reproduce_inputs in;
    in.replications = 0;
    in.wards = select_variant(builtin_ward_tables(), variant::original);
    EXPECT_THROW(reproduce(in), validation_error);
}

TEST(Reproduce, SimulationEntries) {
    reproduce_inputs in;
    in.replications = 200'000;
    const auto r = reproduce(in);
    EXPECT_EQ(r.count("simulation"), 5u);
    EXPECT_TRUE(r.all_pass());
}

TEST(Render, ReportJsonHasAllEntries) {
    reproduce_inputs in;
    in.replications = 0;
    const auto r = reproduce(in);
    const auto j = nlohmann::json::parse(render_report(r, output_format::json));
    EXPECT_EQ(j["entries"].size(), 26u);
    EXPECT_TRUE(j["all_pass"].get<bool>());
    EXPECT_EQ(j["reference_version"].get<int>(), reference::version);
    EXPECT_EQ(j["entries"][0]["computed"].get<double>(), r.entries[0].computed);
}

TEST(Render, ReportCsvAndTable) {
    reproduce_inputs in;
    in.replications = 0;
    const auto r = reproduce(in);
    const auto csv = render_report(r, output_format::csv);
    EXPECT_EQ(csv.rfind("section,label,computed,reference,tolerance,tolerance_kind,status\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 27);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    const auto table = render_report(r, output_format::table);
    EXPECT_NE(table.find("26/26 entries pass"), std::string::npos);
}

TEST(Render, TailCurveCsv) {
    const auto curve = make_tail_curve(builtin_scenario("GGJ7").model(), 1);
    const auto csv = render_tail_curve(curve, output_format::csv);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,probability");
    const auto row = csv.substr(csv.find('\n') + 1);
    EXPECT_EQ(row.substr(0, 2), "1,");
    EXPECT_NEAR(parse_real(row.substr(2, row.size() - 3)), 0.75270964061608, 1e-10);
}

TEST(Render, SensitivityJson) {
    const auto rows = sensitivity_sweep({8, 134, 0, 887}, 2);
    const auto j = nlohmann::json::parse(render_sensitivity(rows, output_format::json));
    ASSERT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["rows"][2]["inverse_p_rounded"].get<std::int64_t>(), 257538);
}

TEST(Render, FormatNames) {
    EXPECT_EQ(parse_output_format("json-like"), output_format::json);
    EXPECT_EQ(parse_output_format("csv"), output_format::csv);
    EXPECT_FALSE(parse_output_format("xml").has_value());
}
