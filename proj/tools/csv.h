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

#ifndef PINTEGRA_TOOLS_CSV_H_
#define PINTEGRA_TOOLS_CSV_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace pintegra::tools {

// Shortest representation that parses back to the same double; "nan",
// "inf" and "-inf" for non-finite values.
std::string FormatDouble(double value);
// Throws std::invalid_argument on malformed input.
double ParseDouble(std::string_view text);

std::vector<std::string_view> SplitFields(std::string_view line);

// Fixed schemas. Each row converts to one CSV line and back; vector fields
// hold space-separated numbers.

struct ConvergenceRow {
  static constexpr std::string_view kHeader =
      "task,method,seed,iteration,cost,wall_time_ms";
  std::string task;
  std::string method;  // solver name, or "ddp" for reference rows
  std::uint64_t seed = 0;
  int iteration = 0;   // -1 with cost nan for a failed cell
  double cost = 0.0;
  double wall_time_ms = 0.0;

  auto Tie() { return std::tie(task, method, seed, iteration, cost, wall_time_ms); }
  auto Tie() const { return std::tie(task, method, seed, iteration, cost, wall_time_ms); }
};

struct ReferenceRow {
  static constexpr std::string_view kHeader =
      "task,seed,converged_cost,fixed_iteration_cost,iterations,"
      "accepted_iterations,degraded";
  std::string task;
  std::uint64_t seed = 0;
  double converged_cost = 0.0;
  // Cost after min(U, accepted) accepted DDP iterations.
  double fixed_iteration_cost = 0.0;
  int iterations = 0;
  int accepted_iterations = 0;
  bool degraded = false;

  auto Tie() { return std::tie(task, seed, converged_cost, fixed_iteration_cost, iterations, accepted_iterations, degraded); }
  auto Tie() const { return std::tie(task, seed, converged_cost, fixed_iteration_cost, iterations, accepted_iterations, degraded); }
};

struct SummaryRow {
  static constexpr std::string_view kHeader =
      "task,method,iteration,mean_cost,normalized_cost,"
      "normalized_fixed_cost,seeds";
  std::string task;
  std::string method;
  int iteration = 0;
  double mean_cost = 0.0;
  // mean_cost over the mean converged (fixed-iteration) DDP cost.
  double normalized_cost = 0.0;
  double normalized_fixed_cost = 0.0;
  int seeds = 0;

  auto Tie() { return std::tie(task, method, iteration, mean_cost, normalized_cost, normalized_fixed_cost, seeds); }
  auto Tie() const { return std::tie(task, method, iteration, mean_cost, normalized_cost, normalized_fixed_cost, seeds); }
};

struct MpcStepRow {
  static constexpr std::string_view kHeader =
      "task,method,seed,step,time,running_cost,completions,failed,target,"
      "control,state";
  std::string task;
  std::string method;
  std::uint64_t seed = 0;
  int step = 0;
  double time = 0.0;
  double running_cost = 0.0;
  int completions = 0;
  bool failed = false;
  std::vector<double> target;
  std::vector<double> control;
  std::vector<double> state;

  auto Tie() { return std::tie(task, method, seed, step, time, running_cost, completions, failed, target, control, state); }
  auto Tie() const { return std::tie(task, method, seed, step, time, running_cost, completions, failed, target, control, state); }
};

struct MpcRunRow {
  static constexpr std::string_view kHeader =
      "task,method,seed,steps,completions,mean_time_to_completion,"
      "mean_cost_to_completion,failed_steps,total_cost";
  std::string task;
  std::string method;
  std::uint64_t seed = 0;
  int steps = 0;
  int completions = 0;
  double mean_time_to_completion = 0.0;
  double mean_cost_to_completion = 0.0;
  int failed_steps = 0;
  double total_cost = 0.0;

  auto Tie() { return std::tie(task, method, seed, steps, completions, mean_time_to_completion, mean_cost_to_completion, failed_steps, total_cost); }
  auto Tie() const { return std::tie(task, method, seed, steps, completions, mean_time_to_completion, mean_cost_to_completion, failed_steps, total_cost); }
};

// Pooled over all runs of a method: completions summed, means taken over
// every completed task.
struct MpcSummaryRow {
  static constexpr std::string_view kHeader =
      "task,method,runs,completions,mean_time_to_completion,"
      "mean_cost_to_completion";
  std::string task;
  std::string method;
  int runs = 0;
  int completions = 0;
  double mean_time_to_completion = 0.0;
  double mean_cost_to_completion = 0.0;

  auto Tie() { return std::tie(task, method, runs, completions, mean_time_to_completion, mean_cost_to_completion); }
  auto Tie() const { return std::tie(task, method, runs, completions, mean_time_to_completion, mean_cost_to_completion); }
};

struct SweepRow {
  static constexpr std::string_view kHeader =
      "task,method,seed,gamma,K,lambda,final_cost,iterations_to_threshold";
  std::string task;
  std::string method;
  std::uint64_t seed = 0;
  double gamma = 0.0;
  int num_rollouts = 0;
  double lambda = 0.0;
  double final_cost = 0.0;
  int iterations_to_threshold = -1;  // -1 when never reached

  auto Tie() { return std::tie(task, method, seed, gamma, num_rollouts, lambda, final_cost, iterations_to_threshold); }
  auto Tie() const { return std::tie(task, method, seed, gamma, num_rollouts, lambda, final_cost, iterations_to_threshold); }
};

namespace csv_internal {

std::string Encode(const std::string& v);
std::string Encode(std::uint64_t v);
std::string Encode(int v);
std::string Encode(double v);
std::string Encode(bool v);
std::string Encode(const std::vector<double>& v);

void Decode(std::string_view s, std::string& v);
void Decode(std::string_view s, std::uint64_t& v);
void Decode(std::string_view s, int& v);
void Decode(std::string_view s, double& v);
void Decode(std::string_view s, bool& v);
void Decode(std::string_view s, std::vector<double>& v);

}  // namespace csv_internal

template <typename Row>
std::string ToCsv(const Row& row) {
  std::string line;
  std::apply(
      [&line](const auto&... field) {
        bool first = true;
        ((line += (first ? "" : ","), line += csv_internal::Encode(field),
          first = false),
         ...);
      },
      row.Tie());
  return line;
}

// Throws std::invalid_argument when the field count or a value is wrong.
template <typename Row>
Row FromCsv(std::string_view line) {
  Row row;
  auto fields = SplitFields(line);
  auto tied = row.Tie();
  if (fields.size() != std::tuple_size_v<decltype(tied)>) {
    throw std::invalid_argument("wrong number of CSV fields");
  }
  std::size_t i = 0;
  std::apply(
      [&](auto&... field) { (csv_internal::Decode(fields[i++], field), ...); },
      tied);
  return row;
}

// Writes "# pintegra <version> <UTC timestamp>", the header and the rows.
// Throws std::runtime_error on I/O failure.
template <typename Row>
void WriteCsv(const std::filesystem::path& path, const std::vector<Row>& rows);

void WriteCsvLines(const std::filesystem::path& path, std::string_view header,
                   const std::vector<std::string>& lines);

// Data lines of a CSV file: comment lines dropped, header checked.
std::vector<std::string> ReadCsvLines(const std::filesystem::path& path,
                                      std::string_view header);

template <typename Row>
void WriteCsv(const std::filesystem::path& path, const std::vector<Row>& rows) {
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (const Row& row : rows) lines.push_back(ToCsv(row));
  WriteCsvLines(path, Row::kHeader, lines);
}

template <typename Row>
std::vector<Row> ReadCsv(const std::filesystem::path& path) {
  std::vector<Row> rows;
  for (const std::string& line : ReadCsvLines(path, Row::kHeader)) {
    rows.push_back(FromCsv<Row>(line));
  }
  return rows;
}

template <typename Row>
bool operator==(const Row& a, const Row& b)
  requires requires { a.Tie(); Row::kHeader; }
{
  return ToCsv(a) == ToCsv(b);
}

}  // namespace pintegra::tools

#endif  // PINTEGRA_TOOLS_CSV_H_
