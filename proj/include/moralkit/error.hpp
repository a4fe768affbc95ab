// Copyright 2026 The Moralkit Authors.
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

#ifndef MORALKIT_ERROR_HPP_
#define MORALKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace moralkit {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data. Messages carry file:line context where known.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that violates a domain constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A statistic that is mathematically undefined for the given input.
class MetricError : public Error {
 public:
  using Error::Error;
};

// Bad run configuration. The CLI maps this to a usage error.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace moralkit

#endif  // MORALKIT_ERROR_HPP_
