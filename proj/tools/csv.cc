// Copyright 2026 The Pintegra Authors
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

#include "csv.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "version.h"

namespace pintegra::tools {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double ParseDouble(std::string_view text) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

namespace csv_internal {

namespace {

template <typename Int>
Int ParseInteger(std::string_view s) {
  Int value{};
  const auto result = std::from_chars(s.data(), s.data() + s.size(), value);
  if (result.ec != std::errc() || result.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

std::string Encode(const std::string& v) {
  if (v.find_first_of(",\n\r\"") != std::string::npos) {
    throw std::invalid_argument("CSV text field contains a separator");
  }
  return v;
}
std::string Encode(std::uint64_t v) { return std::to_string(v); }
std::string Encode(int v) { return std::to_string(v); }
std::string Encode(double v) { return FormatDouble(v); }
std::string Encode(bool v) { return v ? "1" : "0"; }
std::string Encode(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += FormatDouble(v[i]);
  }
  return out;
}

void Decode(std::string_view s, std::string& v) { v = std::string(s); }
void Decode(std::string_view s, std::uint64_t& v) {
  v = ParseInteger<std::uint64_t>(s);
}
void Decode(std::string_view s, int& v) { v = ParseInteger<int>(s); }
void Decode(std::string_view s, double& v) { v = ParseDouble(s); }
void Decode(std::string_view s, bool& v) {
  if (s == "1") {
    v = true;
  } else if (s == "0") {
    v = false;
  } else {
    throw std::invalid_argument("not a flag: '" + std::string(s) + "'");
  }
}
void Decode(std::string_view s, std::vector<double>& v) {
  v.clear();
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(' ', start);
    if (end == std::string_view::npos) end = s.size();
    v.push_back(ParseDouble(s.substr(start, end - start)));
    start = end + 1;
  }
}

}  // namespace csv_internal

void WriteCsvLines(const std::filesystem::path& path, std::string_view header,
                   const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());

  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);

  out << "# pintegra " << kVersion << ' ' << stamp << '\n';
  out << header << '\n';
  for (const std::string& line : lines) out << line << '\n';
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<std::string> ReadCsvLines(const std::filesystem::path& path,
                                      std::string_view header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!saw_header) {
      if (line != header) {
        throw std::invalid_argument("unexpected CSV header in " +
                                    path.string());
      }
      saw_header = true;
      continue;
    }
    lines.push_back(line);
  }
  if (!saw_header) {
    throw std::invalid_argument("missing CSV header in " + path.string());
  }
  return lines;
}

}  // namespace pintegra::tools
