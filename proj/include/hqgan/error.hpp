// Copyright 2026 The hqgan Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception categories shared by the library and the command-line tool.
 *
 * Precondition violations on individual operations throw
 * std::invalid_argument / std::out_of_range. The categories below are used
 * where the CLI needs to map a failure onto a distinct exit code.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace hqgan {

/// Invalid or inconsistent configuration. The message names the field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File-system or serialization failure.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Training produced a non-finite value and was aborted.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace hqgan
