// Copyright 2026 The Fallax Authors
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

namespace fallax {

/// Base class of all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or record. Carries a 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A raw label matched no canonical fallacy name or synonym.
class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& raw)
      : Error("unknown fallacy label: \"" + raw + "\""), raw_(raw) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

/// Record violates the declared dataset schema (e.g. multi-label record
/// loaded in single-label mode).
class SchemaViolation : public Error {
 public:
  using Error::Error;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// Token/vector count or dimensionality disagreement in the distiller.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class OverlappingGroups : public Error {
 public:
  using Error::Error;
};

/// A named backend could not be constructed or is not usable.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

/// Entailment scorer failed for one label; records which one.
class ScorerFailure : public Error {
 public:
  ScorerFailure(const std::string& what, std::size_t label_index)
      : Error("label " + std::to_string(label_index) + ": " + what),
        label_index_(label_index) {}
  std::size_t label_index() const { return label_index_; }

 private:
  std::size_t label_index_;
};

/// Reported by a trainer backend when optimization fails.
class TrainingDiverged : public Error {
 public:
  using Error::Error;
};

/// A completion could not be mapped to any canonical fallacy label.
class UnparseableCompletion : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fallax
