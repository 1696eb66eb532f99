/* Copyright 2026 The ASPMT Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ASPMT_ERROR_HPP
#define ASPMT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aspmt {

struct SourceSpan {
  std::size_t begin = 0;  // byte offsets, begin <= end
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Diagnostic {
  SourceSpan span;
  std::string message;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SortError : public Error {
 public:
  using Error::Error;
};

// Raised when a ground atom cannot be evaluated under an interpretation.
class EvalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics)
      : Error(format(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  static std::string format(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) {
      if (!out.empty()) out += '\n';
      out += std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": " + d.message;
    }
    return out;
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Candidate space of the brute-force oracle exceeds its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace aspmt

#endif  // ASPMT_ERROR_HPP
