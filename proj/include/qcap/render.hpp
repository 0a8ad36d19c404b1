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

#ifndef QCAP_RENDER_HPP
#define QCAP_RENDER_HPP

// SVG line charts from sweep CSV files.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcap {

struct RenderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LineStyle { solid, dotted, dashed };

/// Throws RenderError for anything but solid | dotted | dashed.
LineStyle parse_line_style(const std::string &s);

struct SeriesSpec {
    std::string column;
    LineStyle style = LineStyle::solid;
    std::string label;
};

struct ChartSpec {
    std::string input;
    std::string x_column = "x";
    std::vector<SeriesSpec> series;
    std::string x_label;
    std::string y_label = "capacity (bits)";
    double y_min = 0;
    double y_max = 1;
    std::string output;
    std::string title;
};

/// fig1 plots c_lower, c_upper (solid) and c_chi (dotted) against gamma_t;
/// fig2 the same series against p. Throws RenderError for other names.
ChartSpec preset(const std::string &name);

class CsvTable {
   public:
    /// Empty cells become nullopt. Non-numeric cells throw RenderError with
    /// the 1-based data row number.
    static CsvTable parse(const std::string &text);

    const std::vector<std::string> &header() const {
        return header_;
    }
    std::size_t rows() const {
        return cells_.size();
    }
    /// Throws RenderError naming the column if it is absent.
    std::size_t column_index(const std::string &name) const;
    std::vector<std::optional<double>> column(const std::string &name) const;

   private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::optional<double>>> cells_;
};

/// Deterministic SVG document. Throws RenderError for missing columns,
/// empty or unsorted x values, and non-finite or empty y ranges.
std::string render_svg(const ChartSpec &spec, const CsvTable &table);

/// Reads spec.input, writes spec.output.
void render_chart(const ChartSpec &spec);

}  // namespace qcap

#endif
