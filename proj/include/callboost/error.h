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
//
// Error types shared by every module. Each error carries a coarse kind that
// the command-line tool maps onto its exit code.

#ifndef CALLBOOST_ERROR_H_
#define CALLBOOST_ERROR_H_

#include <stdexcept>
#include <string>

namespace callboost {

enum class ErrorKind {
  kUsage = 1,
  kIo = 2,
  kValidation = 3,
  kEmpty = 4,
};

const char *ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(ErrorKind::kIo, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &what)
      : Error(ErrorKind::kValidation, what) {}
};

// Malformed text at a known line of an input file.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string &source, int line, const std::string &what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  explicit ParseError(const std::string &what)
      : ValidationError(what), line_(0) {}

  int line() const { return line_; }

 private:
  int line_;
};

class UnknownAirline : public ValidationError {
 public:
  explicit UnknownAirline(const std::string &raw)
      : ValidationError("unknown airline designator in callsign " + raw),
        raw_(raw) {}

  const std::string &raw() const { return raw_; }

 private:
  std::string raw_;
};

class NegativeCycleError : public ValidationError {
 public:
  NegativeCycleError()
      : ValidationError("negative-cost cycle reachable from start state") {}
};

class EmptyResult : public Error {
 public:
  explicit EmptyResult(const std::string &what)
      : Error(ErrorKind::kEmpty, what) {}
};

}  // namespace callboost

#endif  // CALLBOOST_ERROR_H_
