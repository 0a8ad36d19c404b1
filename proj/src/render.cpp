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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qcap/format.hpp"

namespace qcap {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 0.1 * kWidth;
constexpr double kRight = 0.9 * kWidth;
constexpr double kTop = 0.1 * kHeight;
constexpr double kBottom = 0.9 * kHeight;

const char *const kPalette[] = {"#1f3a93", "#b03a2e", "#1e8449", "#7d3c98", "#ca6f1e", "#2e4053"};

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string coord(double v) {
    return format_fixed(v, 2);
}

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) {
        s.pop_back();
    }
    std::size_t i = 0;
    while (i < s.size() && s[i] == ' ') {
        ++i;
    }
    return s.substr(i);
}

/// About `target` ticks at 1, 2 or 5 times a power of ten.
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) {
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::ceil(lo / step - 1e-9);
    for (double k = first; k * step <= hi + 1e-9 * step; k += 1) {
        ticks.push_back(k * step);
    }
    return ticks;
}

const char *dash_attribute(LineStyle s) {
    switch (s) {
        case LineStyle::dotted: return " stroke-dasharray=\"2,4\"";
        case LineStyle::dashed: return " stroke-dasharray=\"8,4\"";
        case LineStyle::solid: break;
    }
    return "";
}

}  // namespace

LineStyle parse_line_style(const std::string &s) {
    if (s == "solid") {
        return LineStyle::solid;
    }
    if (s == "dotted") {
        return LineStyle::dotted;
    }
    if (s == "dashed") {
        return LineStyle::dashed;
    }
    throw RenderError("unknown line style '" + s + "' (solid|dotted|dashed)");
}

ChartSpec preset(const std::string &name) {
    ChartSpec spec;
    spec.series = {{"c_lower", LineStyle::solid, "lower bound"},
                   {"c_upper", LineStyle::solid, "upper bound"},
                   {"c_chi", LineStyle::dotted, "Holevo capacity"}};
    if (name == "fig1") {
        spec.x_label = "gamma t";
        spec.title = "Generalized amplitude damping, p = 0.475";
    } else if (name == "fig2") {
        spec.x_label = "p";
        spec.title = "Mixture channel";
    } else {
        throw RenderError("unknown preset '" + name + "' (fig1|fig2)");
    }
    return spec;
}

CsvTable CsvTable::parse(const std::string &text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        std::vector<std::string> cells = split_line(line);
        if (!have_header) {
            for (auto &c : cells) {
                t.header_.push_back(trim(c));
            }
            have_header = true;
            continue;
        }
        ++row;
        if (cells.size() > t.header_.size()) {
            throw RenderError("row " + std::to_string(row) + " has more cells than the header");
        }
        cells.resize(t.header_.size());
        std::vector<std::optional<double>> values;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            if (cell.empty()) {
                values.emplace_back();
                continue;
            }
            const auto v = parse_number(cell);
            if (!v) {
                throw RenderError("row " + std::to_string(row) + ", column '" + t.header_[c] +
                                  "': non-numeric cell '" + cell + "'");
            }
            values.push_back(v);
        }
        t.cells_.push_back(std::move(values));
    }
    if (!have_header) {
        throw RenderError("CSV input is empty");
    }
    return t;
}

std::size_t CsvTable::column_index(const std::string &name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) {
        throw RenderError("column '" + name + "' not found in CSV header");
    }
    return static_cast<std::size_t>(it - header_.begin());
}

std::vector<std::optional<double>> CsvTable::column(const std::string &name) const {
    const std::size_t idx = column_index(name);
    std::vector<std::optional<double>> out;
    out.reserve(cells_.size());
    for (const auto &row : cells_) {
        out.push_back(row[idx]);
    }
    return out;
}

std::string render_svg(const ChartSpec &spec, const CsvTable &table) {
    if (!std::isfinite(spec.y_min) || !std::isfinite(spec.y_max) || !(spec.y_min < spec.y_max)) {
        throw RenderError("y range must be finite with ymin < ymax");
    }
    if (spec.series.empty()) {
        throw RenderError("chart has no series");
    }
    const auto xs = table.column(spec.x_column);
    std::vector<std::vector<std::optional<double>>> ys;
    for (const auto &s : spec.series) {
        ys.push_back(table.column(s.column));
    }
    if (xs.empty()) {
        throw RenderError("CSV input has no data rows");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!xs[i] || !std::isfinite(*xs[i])) {
            throw RenderError("row " + std::to_string(i + 1) + " has no finite x value");
        }
        if (i > 0 && *xs[i] < *xs[i - 1]) {
            throw RenderError("row " + std::to_string(i + 1) + ": rows must be sorted by " + spec.x_column);
        }
    }
    double x_lo = *xs.front();
    double x_hi = *xs.back();
    if (x_hi == x_lo) {
        const double pad = x_lo == 0 ? 0.5 : 0.05 * std::abs(x_lo);
        x_lo -= pad;
        x_hi += pad;
    }
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kRight - kLeft); };
    auto py = [&](double y) { return kBottom - (y - spec.y_min) / (spec.y_max - spec.y_min) * (kBottom - kTop); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg << "<defs><clipPath id=\"plot-area\"><rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\""
        << coord(kRight - kLeft) << "\" height=\"" << coord(kBottom - kTop) << "\"/></clipPath></defs>\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    if (!spec.title.empty()) {
        svg << "<text x=\"" << coord(kWidth / 2) << "\" y=\"" << coord(kTop / 2 + 5)
            << "\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(spec.title) << "</text>\n";
    }

    svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
        << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(kRight - kLeft)
        << "\" height=\"" << coord(kBottom - kTop) << "\"/>\n";
    for (double t : nice_ticks(x_lo, x_hi)) {
        svg << "<line x1=\"" << coord(px(t)) << "\" y1=\"" << coord(kBottom) << "\" x2=\"" << coord(px(t))
            << "\" y2=\"" << coord(kBottom + 5) << "\"/>\n";
    }
    for (double t : nice_ticks(spec.y_min, spec.y_max)) {
        svg << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(py(t)) << "\" x2=\"" << coord(kLeft)
            << "\" y2=\"" << coord(py(t)) << "\"/>\n";
    }
    svg << "</g>\n<g class=\"tick-labels\" fill=\"black\">\n";
    for (double t : nice_ticks(x_lo, x_hi)) {
        svg << "<text x=\"" << coord(px(t)) << "\" y=\"" << coord(kBottom + 20) << "\" text-anchor=\"middle\">"
            << format_number(t) << "</text>\n";
    }
    for (double t : nice_ticks(spec.y_min, spec.y_max)) {
        svg << "<text x=\"" << coord(kLeft - 9) << "\" y=\"" << coord(py(t) + 4) << "\" text-anchor=\"end\">"
            << format_number(t) << "</text>\n";
    }
    svg << "</g>\n";
    svg << "<text class=\"x-label\" x=\"" << coord((kLeft + kRight) / 2) << "\" y=\"" << coord(kBottom + 40)
        << "\" text-anchor=\"middle\">" << xml_escape(spec.x_label) << "</text>\n";
    svg << "<text class=\"y-label\" x=\"" << coord(kLeft - 50) << "\" y=\"" << coord((kTop + kBottom) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << coord(kLeft - 50) << " "
        << coord((kTop + kBottom) / 2) << ")\">" << xml_escape(spec.y_label) << "</text>\n";

    svg << "<g class=\"series\" clip-path=\"url(#plot-area)\" fill=\"none\" stroke-width=\"2\">\n";
    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const char *color = kPalette[s % std::size(kPalette)];
        const std::string column = xml_escape(spec.series[s].column);
        std::vector<std::pair<double, double>> run;
        auto flush = [&] {
            if (run.size() == 1) {
                svg << "<circle data-column=\"" << column << "\" cx=\"" << coord(run[0].first) << "\" cy=\""
                    << coord(run[0].second) << "\" r=\"3\" fill=\"" << color << "\" stroke=\"none\"/>\n";
            } else if (run.size() > 1) {
                svg << "<polyline data-column=\"" << column << "\" stroke=\"" << color << "\""
                    << dash_attribute(spec.series[s].style) << " points=\"";
                for (std::size_t k = 0; k < run.size(); ++k) {
                    svg << (k ? " " : "") << coord(run[k].first) << "," << coord(run[k].second);
                }
                svg << "\"/>\n";
            }
            run.clear();
        };
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const auto &y = ys[s][i];
            if (y && std::isfinite(*y)) {
                run.emplace_back(px(*xs[i]), py(*y));
            } else {
                flush();
            }
        }
        flush();
    }
    svg << "</g>\n";

    svg << "<g class=\"legend\">\n";
    const double lx = kRight - 190;
    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const double ly = kTop + 20 + 20 * static_cast<double>(s);
        const auto &series = spec.series[s];
        svg << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(lx + 30) << "\" y2=\""
            << coord(ly) << "\" stroke=\"" << kPalette[s % std::size(kPalette)] << "\" stroke-width=\"2\""
            << dash_attribute(series.style) << "/>\n";
        svg << "<text x=\"" << coord(lx + 38) << "\" y=\"" << coord(ly + 4) << "\">"
            << xml_escape(series.label.empty() ? series.column : series.label) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void render_chart(const ChartSpec &spec) {
    std::ifstream in(spec.input, std::ios::binary);
    if (!in) {
        throw RenderError("cannot read '" + spec.input + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string svg = render_svg(spec, CsvTable::parse(buffer.str()));
    std::ofstream out(spec.output, std::ios::binary);
    if (!out) {
        throw RenderError("cannot write '" + spec.output + "'");
    }
    out << svg;
}

}  // namespace qcap
