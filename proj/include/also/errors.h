// Copyright 2026 The ALSO Authors
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

#ifndef ALSO_ERRORS_H
#define ALSO_ERRORS_H

#include <stdexcept>
#include <string>

namespace also {

/// Malformed experiment configuration. `line` is 0 when no source position is known.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string &what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {
    }
    int line() const {
        return line_;
    }

   private:
    int line_;
};

/// A non-finite objective value or similar breakdown during optimization.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace also

#endif
