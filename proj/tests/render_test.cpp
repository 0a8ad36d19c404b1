// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcap/render.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "gtest/gtest.h"
#include "qcap/analysis.hpp"

using namespace qcap;

namespace {

const char *kCsv =
    "x,c_lower,c_upper,c_chi\n"
    "0.1,0.2,0.4,0.3\n"
    "0.2,0.25,,0.35\n"
    "0.3,0.3,0.5,0.4\n"
    "0.4,0.35,0.55,\n";

ChartSpec two_series() {
    ChartSpec spec;
    spec.series = {{"c_lower", LineStyle::solid, "lower"}, {"c_upper", LineStyle::dashed, "upper"}};
    spec.x_label = "x";
    return spec;
}

std::size_t count(const std::string &text, const std::string &needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

std::string message_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const RenderError &e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(render, parse_line_style) {
    EXPECT_EQ(parse_line_style("solid"), LineStyle::solid);
    EXPECT_EQ(parse_line_style("dotted"), LineStyle::dotted);
    EXPECT_EQ(parse_line_style("dashed"), LineStyle::dashed);
    EXPECT_THROW(parse_line_style("wavy"), RenderError);
}

TEST(render, csv_parse) {
    const CsvTable t = CsvTable::parse(kCsv);
    EXPECT_EQ(t.rows(), 4u);
    EXPECT_EQ(t.header().size(), 4u);
    const auto upper = t.column("c_upper");
    EXPECT_EQ(upper[0], 0.4);
    EXPECT_FALSE(upper[1].has_value());
    EXPECT_FALSE(t.column("c_chi")[3].has_value());
    EXPECT_EQ(t.column_index("c_chi"), 3u);
    EXPECT_NE(message_of([&] { t.column_index("nope"); }).find("column 'nope' not found"), std::string::npos);
}

TEST(render, csv_parse_names_bad_cell) {
    const std::string msg = message_of([] { CsvTable::parse("x,y\n0.1,0.2\n0.2,abc\n"); });
    EXPECT_NE(msg.find("row 2"), std::string::npos);
    EXPECT_NE(msg.find("'y'"), std::string::npos);
}

TEST(render, svg_structure) {
    const std::string svg = render_svg(two_series(), CsvTable::parse(kCsv));
    EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
    EXPECT_NE(svg.find("viewBox=\"0 0 800 500\""), std::string::npos);
    EXPECT_NE(svg.find("clipPath"), std::string::npos);
    EXPECT_NE(svg.find("data-column=\"c_lower\""), std::string::npos);
    EXPECT_NE(svg.find(">lower<"), std::string::npos);
    EXPECT_NE(svg.find(">upper<"), std::string::npos);
    EXPECT_NE(svg.find("stroke-dasharray=\"8,4\""), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(render, empty_cells_break_lines) {
    const std::string svg = render_svg(two_series(), CsvTable::parse(kCsv));
    const std::regex poly("<polyline[^>]*data-column=\"c_upper\"[^>]*points=\"([^\"]*)\"");
    std::smatch m;
    // c_upper has one point before the gap and two after: a circle plus a two-point line.
    std::string rest = svg;
    int lines = 0;
    while (std::regex_search(rest, m, poly)) {
        ++lines;
        std::istringstream pts(m[1].str());
        std::string pt;
        int n = 0;
        while (pts >> pt) {
            ++n;
        }
        EXPECT_EQ(n, 2);
        rest = m.suffix();
    }
    EXPECT_EQ(lines, 1);
    EXPECT_EQ(count(svg, "<circle"), 1u);
}

TEST(render, single_row_renders_circles) {
    ChartSpec spec = two_series();
    const std::string svg = render_svg(spec, CsvTable::parse("x,c_lower,c_upper\n0.5,0.2,0.6\n"));
    EXPECT_EQ(count(svg, "<circle"), 2u);
    EXPECT_EQ(count(svg, "<polyline"), 0u);
}

TEST(render, dotted_pattern) {
    ChartSpec spec;
    spec.series = {{"c_chi", LineStyle::dotted, "chi"}};
    const std::string svg = render_svg(spec, CsvTable::parse(kCsv));
    EXPECT_NE(svg.find("stroke-dasharray=\"2,4\""), std::string::npos);
}

TEST(render, deterministic_output) {
    const CsvTable t = CsvTable::parse(kCsv);
    EXPECT_EQ(render_svg(two_series(), t), render_svg(two_series(), t));
}

TEST(render, errors) {
    ChartSpec spec = two_series();
    EXPECT_THROW(render_svg(spec, CsvTable::parse("x,c_lower,c_upper\n0.2,0,0\n0.1,0,0\n")), RenderError);
    EXPECT_THROW(render_svg(spec, CsvTable::parse("x,c_lower,c_upper\n0.2,0,0\n,0,0\n")), RenderError);
    EXPECT_THROW(render_svg(spec, CsvTable::parse("x,c_lower\n0.2,0\n")), RenderError);
    spec.y_min = 1;
    spec.y_max = 1;
    EXPECT_THROW(render_svg(spec, CsvTable::parse(kCsv)), RenderError);
    ChartSpec none;
    EXPECT_THROW(render_svg(none, CsvTable::parse(kCsv)), RenderError);
}

TEST(render, escapes_labels) {
    ChartSpec spec = two_series();
    spec.title = "a < b & c";
    const std::string svg = render_svg(spec, CsvTable::parse(kCsv));
    EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
}

TEST(render, presets) {
    const ChartSpec fig1 = preset("fig1");
    ASSERT_EQ(fig1.series.size(), 3u);
    EXPECT_EQ(fig1.series[0].column, "c_lower");
    EXPECT_EQ(fig1.series[1].column, "c_upper");
    EXPECT_EQ(fig1.series[2].column, "c_chi");
    EXPECT_EQ(fig1.series[2].style, LineStyle::dotted);
    EXPECT_EQ(fig1.x_label, "gamma t");
    EXPECT_EQ(preset("fig2").x_label, "p");
    EXPECT_THROW(preset("fig3"), RenderError);
}

TEST(render, sweep_round_trip_through_file) {
    SweepConfig c;
    c.family = Family::gad;
    c.p = 0.475;
    c.min = 0.05;
    c.max = 3;
    c.steps = 20;
    const auto dir = std::filesystem::temp_directory_path() / "qcap_render_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "sweep.csv") << sweep_csv(run_sweep(c));
    }
    ChartSpec spec = preset("fig1");
    spec.input = (dir / "sweep.csv").string();
    spec.output = (dir / "fig.svg").string();
    render_chart(spec);
    std::ifstream in(spec.output);
    std::stringstream svg;
    svg << in.rdbuf();
    EXPECT_EQ(count(svg.str(), "<polyline"), 2u);
    std::filesystem::remove_all(dir);
}
