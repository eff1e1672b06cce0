// Copyright 2026 The qgrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGRAD_ERRORS_HPP
#define QGRAD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qgrad {

/// Bad run configuration or contract violation by the caller.
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

/// Unreadable/unwritable files, unsupported formats.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

/// Input is structurally valid but degenerate for the requested pipeline
/// (all-zero image, zero-probability measurement branch, ...).
class DegenerateInputError : public std::runtime_error {
  public:
    explicit DegenerateInputError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace qgrad

#endif
