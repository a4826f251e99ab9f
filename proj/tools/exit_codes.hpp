// Copyright 2026 The cavent Authors
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

#ifndef CAVENT_TOOLS_EXIT_CODES_HPP_
#define CAVENT_TOOLS_EXIT_CODES_HPP_

#include <exception>
#include <string>

#include "cavent/experiments.hpp"

namespace cavent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct Failure {
  int code = kExitNumerical;
  std::string message;
};

/// Maps an in-flight exception to the process exit code and a diagnostic.
inline Failure classify(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError& e) {
    return {kExitConfig, std::string("config error: ") + e.what()};
  } catch (const ParameterError& e) {
    return {kExitConfig, std::string("config error: ") + e.what()};
  } catch (const InvalidStateError& e) {
    return {kExitNumerical, std::string("numerical invariant violation: ") + e.what()};
  } catch (const std::exception& e) {
    return {kExitNumerical, std::string("error: ") + e.what()};
  } catch (...) {
    return {kExitNumerical, "error: unknown failure"};
  }
}

}  // namespace cavent::cli

#endif  // CAVENT_TOOLS_EXIT_CODES_HPP_
