// Copyright 2026 The callboost Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CALLBOOST_TEXT_UTIL_H_
#define CALLBOOST_TEXT_UTIL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace callboost {

std::vector<std::string> SplitWhitespace(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
std::string Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::string ToUpper(std::string_view s);
std::string Join(const std::vector<std::string> &words,
                 std::string_view sep = " ");
bool StartsWith(std::string_view s, std::string_view prefix);

// Shortest text that reads back to the same double; "Infinity" for +inf.
std::string FormatDouble(double v);
std::optional<double> ParseDouble(std::string_view s);
std::optional<long long> ParseInt(std::string_view s);

}  // namespace callboost

#endif  // CALLBOOST_TEXT_UTIL_H_
