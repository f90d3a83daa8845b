// Copyright 2026 The TopoTune Authors.
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

#ifndef TOPOTUNE_ERRORS_H_
#define TOPOTUNE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace topotune {

// A value or argument lies outside the feasible set it was checked against.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The ask/tell contract was violated by the caller.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed space declaration, operator spec or harness configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The external evaluator program could not be started at all. Unlike an
// evaluation failure this aborts the run.
class EvaluatorSpawnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace topotune

#endif  // TOPOTUNE_ERRORS_H_
