/*
 Copyright 2026 The hankelcast Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "hankelcast/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hankelcast/errors.hpp"

namespace hankelcast::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_number(std::string_view cell, std::size_t line_no) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || end != cell.data() + cell.size() || cell.empty() ||
      !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid number '" +
                     std::string(cell) + "'");
  }
  return value;
}

/// Counts the leading run of columns named prefix1, prefix2, ... from `at`.
Index count_columns(const std::vector<std::string_view>& header, std::size_t at, char prefix) {
  Index count = 0;
  while (at < header.size() && header[at] == prefix + std::to_string(count + 1)) {
    ++count;
    ++at;
  }
  return count;
}

std::vector<double> numbers(const nlohmann::json& doc, const char* key, Index expected) {
  if (!doc.contains(key)) throw ParseError(std::string("system file lacks '") + key + "'");
  const nlohmann::json& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
  if (static_cast<Index>(arr.size()) != expected) {
    throw ParseError(std::string("'") + key + "' has " + std::to_string(arr.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const nlohmann::json& v : arr) {
    if (!v.is_number()) throw ParseError(std::string("'") + key + "' holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

Index dimension(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer() || doc.at(key).get<long>() < 0) {
    throw ParseError(std::string("system file needs a nonnegative integer '") + key + "'");
  }
  return static_cast<Index>(doc.at(key).get<long>());
}

Matrix row_major(const std::vector<double>& values, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  }
  return m;
}

nlohmann::ordered_json flatten(const Matrix& m) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  }
  return arr;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::optional<Trajectory> read_trajectory(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header_line = line;
      header = split(header_line);
      break;
    }
  }
  if (header.empty()) return std::nullopt;
  if (header.front() != "t") throw ParseError("trajectory header must start with 't'");
  const Index m = count_columns(header, 1, 'u');
  const Index p = count_columns(header, 1 + static_cast<std::size_t>(m), 'y');
  if (static_cast<std::size_t>(1 + m + p) != header.size()) {
    throw ParseError("trajectory header must read t,u1..um,y1..yp");
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> cells = split(line);
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns, got " +
                       std::to_string(cells.size()));
    }
    const double t = parse_number(cells.front(), line_no);
    if (t != static_cast<double>(rows.size())) {
      throw ParseError("line " + std::to_string(line_no) + ": time column must equal " +
                       std::to_string(rows.size()));
    }
    std::vector<double> values;
    for (std::size_t c = 1; c < cells.size(); ++c) values.push_back(parse_number(cells[c], line_no));
    rows.push_back(std::move(values));
  }

  const auto samples = static_cast<Index>(rows.size());
  Matrix u(m, samples);
  Matrix y(p, samples);
  for (Index t = 0; t < samples; ++t) {
    const std::vector<double>& r = rows[static_cast<std::size_t>(t)];
    for (Index i = 0; i < m; ++i) u(i, t) = r[static_cast<std::size_t>(i)];
    for (Index i = 0; i < p; ++i) y(i, t) = r[static_cast<std::size_t>(m + i)];
  }
  return Trajectory(std::move(u), std::move(y));
}

void write_trajectory(std::ostream& out, const Trajectory& traj) {
  out << 't';
  for (Index i = 0; i < traj.input_width(); ++i) out << ",u" << i + 1;
  for (Index i = 0; i < traj.output_width(); ++i) out << ",y" << i + 1;
  out << '\n';
  for (Index t = 0; t < traj.length(); ++t) {
    out << t;
    for (Index i = 0; i < traj.input_width(); ++i) out << ',' << format_number(traj.u()(i, t));
    for (Index i = 0; i < traj.output_width(); ++i) out << ',' << format_number(traj.y()(i, t));
    out << '\n';
  }
}

void write_outputs(std::ostream& out, const Matrix& y) {
  write_trajectory(out, Trajectory(Matrix(0, y.cols()), y));
}

void write_matrix(std::ostream& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_number(m(i, j));
    }
    out << '\n';
  }
}

StateSpace read_system(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("system file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("system file must hold a JSON object");
  const Index n = dimension(doc, "n");
  const Index m = dimension(doc, "m");
  const Index p = dimension(doc, "p");
  return StateSpace(row_major(numbers(doc, "A", n * n), n, n),
                    row_major(numbers(doc, "B", n * m), n, m),
                    row_major(numbers(doc, "C", p * n), p, n),
                    row_major(numbers(doc, "D", p * m), p, m));
}

void write_system(std::ostream& out, const StateSpace& sys) {
  nlohmann::ordered_json doc;
  doc["n"] = sys.states();
  doc["m"] = sys.inputs();
  doc["p"] = sys.outputs();
  doc["A"] = flatten(sys.a());
  doc["B"] = flatten(sys.b());
  doc["C"] = flatten(sys.c());
  doc["D"] = flatten(sys.d());
  out << doc.dump(2) << '\n';
}

std::optional<Trajectory> load_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trajectory file '" + path + "'");
  return read_trajectory(in);
}

StateSpace load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open system file '" + path + "'");
  return read_system(in);
}

}  // namespace hankelcast::io
