/*
 * Copyright 2025 The segfuse authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace segfuse {

/// Root of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Inputs violate a contract: shapes, class ranges, file formats.
/// The CLI maps these to exit code 3.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or codec failure. The CLI maps these to exit code 4.
class IoError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ClassOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ClassCountMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyMatrix : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyStack : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MemberShapeMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidFactor : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ChannelMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DuplicateRecord : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownSplit : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MissingCounterpart : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace segfuse
