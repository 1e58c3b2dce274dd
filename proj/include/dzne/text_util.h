// Copyright 2026 The dzne Authors
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

#ifndef DZNE_TEXT_UTIL_H
#define DZNE_TEXT_UTIL_H

#include <string>
#include <string_view>
#include <vector>

namespace dzne {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);
/// Strict parse of a whole token; throws std::invalid_argument.
double parse_double(std::string_view tok);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_whitespace(std::string_view line);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace dzne

#endif  // DZNE_TEXT_UTIL_H
