// Copyright 2026 The HQA Lab Authors
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

namespace hqa {

/// Raised when a numerical invariant (e.g. state norm) drifts beyond tolerance.
class ConsistencyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent experiment configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Training hit a non-finite loss.
class TrainingAborted : public std::runtime_error {
  public:
    TrainingAborted(const std::string &msg, long iteration)
        : std::runtime_error(msg), iteration_(iteration) {}
    [[nodiscard]] long iteration() const noexcept { return iteration_; }

  private:
    long iteration_;
};

/// Malformed input file (manifest, latent table, checkpoint).
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace hqa
