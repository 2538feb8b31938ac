// Copyright 2026 The MLSS Authors.
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

#ifndef MLSS_ERROR_H_
#define MLSS_ERROR_H_

#include <stdexcept>
#include <string>

namespace mlss {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed market, preference list, policy tag, config file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Market generation or validation failure.
class MarketError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// A decoded message that cannot be a valid arm index.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlss

#endif  // MLSS_ERROR_H_
