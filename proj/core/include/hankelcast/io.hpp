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
#ifndef HANKELCAST_IO_HPP
#define HANKELCAST_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "hankelcast/lti.hpp"

namespace hankelcast::io {

// Trajectory files are CSV with a header "t,u1,...,um,y1,...,yp" and one
// row per sample, t counting up from 0. Output columns may be absent, in
// which case the trajectory has output width 0.
//
// System files are JSON objects
//   {"n": 2, "m": 1, "p": 1, "A": [...], "B": [...], "C": [...], "D": [...]}
// with every matrix flattened in row-major order.

/// Shortest decimal text that parses back to exactly v.
std::string format_number(double v);

/// Parses a trajectory file. An empty stream yields std::nullopt (no header,
/// widths unknown). Throws ParseError on malformed input.
std::optional<Trajectory> read_trajectory(std::istream& in);
void write_trajectory(std::ostream& out, const Trajectory& traj);

/// Writes "t,y1,...,yp" followed by one row per column of y.
void write_outputs(std::ostream& out, const Matrix& y);

/// Writes m as comma-separated rows, no header.
void write_matrix(std::ostream& out, const Matrix& m);

/// Throws ParseError on malformed JSON, missing keys or wrong array lengths.
StateSpace read_system(std::istream& in);
void write_system(std::ostream& out, const StateSpace& sys);

/// File-path conveniences; throw ParseError if the file cannot be opened.
std::optional<Trajectory> load_trajectory(const std::string& path);
StateSpace load_system(const std::string& path);

}  // namespace hankelcast::io

#endif  // HANKELCAST_IO_HPP
