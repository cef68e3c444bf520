// Copyright 2026 The LANCER Authors.
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

#include <stdexcept>
#include <string>

namespace lancer {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration (missing placeholder in a template, invalid parameter).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed on-disk data or model output. Carries a 1-based line number
/// when the source is a line-oriented file (0 = not applicable).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Inconsistent inputs handed to an operation (e.g. a judged document that
/// is absent from the first-stage run).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A metric that has no defined value for a request (zero nuggets, zero
/// ideal gain). Callers aggregate these rather than abort.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// Transport-level failure from the chat gateway.
class GatewayError : public Error {
 public:
  GatewayError(const std::string& msg, int http_status = 0, int attempts = 1,
               bool retryable = true)
      : Error(msg),
        http_status_(http_status),
        attempts_(attempts),
        retryable_(retryable) {}

  int http_status() const { return http_status_; }
  int attempts() const { return attempts_; }
  bool retryable() const { return retryable_; }

 private:
  int http_status_;
  int attempts_;
  bool retryable_;
};

}  // namespace lancer
