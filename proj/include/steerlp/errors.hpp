// Copyright 2026 The steerlp Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace steerlp {

/// Base class of every error raised by the library. The CLI maps each
/// subclass to a distinct exit code.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual int exit_code() const noexcept { return 1; }
};

class IoError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] int exit_code() const noexcept override { return 2; }
};

class ValidationError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] int exit_code() const noexcept override { return 3; }
};

class SolverError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] int exit_code() const noexcept override { return 4; }
};

class CapExceededError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] int exit_code() const noexcept override { return 5; }
};

} // namespace steerlp
