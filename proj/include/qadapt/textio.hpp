// Copyright 2026 The qadapt authors
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

#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qadapt {

/// 17 significant digits, locale-independent: enough for an exact binary64
/// round trip through text.
inline std::string format_double17(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Error carrying the 1-based line number of the offending input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error(message + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline double parse_double(std::string_view token, int line) {
  std::string_view body = token;  // from_chars rejects an explicit '+'
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto res =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || res.ec != std::errc() ||
      res.ptr != body.data() + body.size()) {
    throw ParseError("invalid number '" + std::string(token) + "'", line);
  }
  return value;
}

inline long parse_long(std::string_view token, int line) {
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  long value = 0;
  const auto res =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || res.ec != std::errc() ||
      res.ptr != body.data() + body.size()) {
    throw ParseError("invalid integer '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace qadapt
