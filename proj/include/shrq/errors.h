/*
 * Copyright 2026 The shrq Authors.
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

#ifndef SHRQ_ERRORS_H_
#define SHRQ_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace shrq {

enum class ErrorCode {
  kConfig,             // invalid parameters or violated correctness margin
  kSetup,              // parameter search exhausted, duplicate ids during setup
  kQueryUnsupported,   // radius outside what the deployment can answer
  kUnsupportedLayout,  // operation needs the unified component layout
  kProtocol,           // malformed or inconsistent protocol message
  kDataIntegrity,      // authentication failure or dangling record
  kNotFound,
  kConflict,
  kIngestion,          // bad dataset row
  kKeyFile,            // key file unreadable or inconsistent
  kUnreachable,        // server connection failed
};

// Stable machine-readable name, used on the wire and in CLI output.
std::string_view ErrorCodeName(ErrorCode code);
ErrorCode ErrorCodeFromName(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shrq

#endif  // SHRQ_ERRORS_H_
