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
#ifndef HANKELCAST_ERRORS_HPP
#define HANKELCAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hankelcast {

/// Matrix or signal widths do not agree with what an operation expects.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation was called outside its documented preconditions
/// (e.g. a lag bound longer than the initial trajectory).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed trajectory or system file.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hankelcast

#endif  // HANKELCAST_ERRORS_HPP
