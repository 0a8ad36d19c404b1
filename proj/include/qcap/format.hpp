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

#ifndef QCAP_FORMAT_HPP
#define QCAP_FORMAT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace qcap {

/// 12 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v);

/// Fixed-point with `decimals` digits after the point; locale independent.
std::string format_fixed(double v, int decimals);

/// Locale-independent parse of a complete numeric token; nullopt otherwise.
std::optional<double> parse_number(std::string_view s);

/// format_number followed by parse_number, so serialized values carry 12 digits.
double round_significant(double v);

}  // namespace qcap

#endif
