#include <gtest/gtest.h>

#include <cmath>
#include <regex>

#include "optocav/csv.hpp"
#include "optocav/svg.hpp"

using namespace optocav;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

} // namespace

TEST(FormatNumber, ShortestRoundTripCappedAtTwelveDigits) {
    EXPECT_EQ(csv::format_number(0.0), "0");
    EXPECT_EQ(csv::format_number(-0.0), "0");
    EXPECT_EQ(csv::format_number(1.0), "1");
    EXPECT_EQ(csv::format_number(0.005), "0.005");
    EXPECT_EQ(csv::format_number(-0.25), "-0.25");
    EXPECT_EQ(csv::format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(csv::format_number(4.0 * 3.14159265358979323846 / 0.1), "125.663706144");
    EXPECT_EQ(csv::format_number(2.5e-17), "2.5e-17");
    EXPECT_EQ(csv::format_cell(std::nullopt), "");
}

TEST(FormatNumber, TwelveDigitsAlwaysRecoverValueToRelativePrecision) {
    for (double v : {0.1 + 0.2, std::exp(1.0), -1e-9 / 7.0, 123456.789012345}) {
        const double back = std::stod(csv::format_number(v));
        EXPECT_LE(std::abs(back - v), 1e-11 * std::abs(v));
    }
}

TEST(ReadTable, ParsesEmptyCellsAndCrLf) {
    const auto t = csv::read_table("t,a,b\r\n0,1,\r\n0.5,,2\r\n");
    ASSERT_EQ(t.header, (std::vector<std::string>{"t", "a", "b"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][1], 1.0);
    EXPECT_FALSE(t.rows[0][2].has_value());
    EXPECT_FALSE(t.rows[1][1].has_value());
    EXPECT_EQ(t.column_index("b"), 2u);
}

TEST(ReadTable, Malformed) {
    EXPECT_THROW(csv::read_table(""), csv::MalformedCSV);
    EXPECT_THROW(csv::read_table("t,a\n0,1,2\n"), csv::MalformedCSV);
    EXPECT_THROW(csv::read_table("t,a\n0,x\n"), csv::MalformedCSV);
}

TEST(RenderSvg, MinimalInput) {
    const auto t = csv::read_table("t,a,b\n0,1,2\n1,3,-1\n");
    const auto svg = svg::render_svg(t, {"a", "b"});
    EXPECT_EQ(count(svg, "<polyline"), 2u);
    EXPECT_NE(svg.find("viewBox=\"0 0 800 500\""), std::string::npos);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    const std::regex points("points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), points); it != std::sregex_iterator(); ++it) {
        const std::string pts = (*it)[1];
        EXPECT_EQ(count(pts, ","), 2u) << pts;
    }
    // Legend names each column.
    EXPECT_NE(svg.find(">a</text>"), std::string::npos);
    EXPECT_NE(svg.find(">b</text>"), std::string::npos);
}

TEST(RenderSvg, Deterministic) {
    const auto t = csv::read_table("t,y\n0,0.1\n0.5,0.7\n1,-0.3\n");
    EXPECT_EQ(svg::render_svg(t, {"y"}), svg::render_svg(t, {"y"}));
}

TEST(RenderSvg, MissingColumnNamesIt) {
    const auto t = csv::read_table("t,y\n0,1\n");
    try {
        svg::render_svg(t, {"y", "n_b"});
        FAIL() << "expected MissingColumn";
    } catch (const csv::MissingColumn& e) {
        EXPECT_EQ(e.column(), "n_b");
        EXPECT_NE(std::string(e.what()).find("n_b"), std::string::npos);
    }
}

TEST(RenderSvg, SkipsEmptyCellsAndHandlesFlatData) {
    const auto t = csv::read_table("t,y,z\n0,1,\n1,1,\n2,1,5\n");
    const auto svg = svg::render_svg(t, {"y", "z"});
    EXPECT_EQ(count(svg, "<polyline"), 2u);
    EXPECT_EQ(svg.find("nan"), std::string::npos);
    EXPECT_EQ(svg.find("inf"), std::string::npos);
}

TEST(RenderSvg, EscapesLabels) {
    const auto t = csv::read_table("t,a<b\n0,1\n1,2\n");
    const auto svg = svg::render_svg(t, {"a<b"});
    EXPECT_NE(svg.find("a&lt;b"), std::string::npos);
    EXPECT_EQ(svg.find("a<b"), std::string::npos);
}
