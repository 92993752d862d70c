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

#include "shrq/errors.h"

#include <array>
#include <utility>

namespace shrq {
namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 11> kNames = {{
    {ErrorCode::kConfig, "config"},
    {ErrorCode::kSetup, "setup"},
    {ErrorCode::kQueryUnsupported, "query_unsupported"},
    {ErrorCode::kUnsupportedLayout, "unsupported_layout"},
    {ErrorCode::kProtocol, "protocol"},
    {ErrorCode::kDataIntegrity, "data_integrity"},
    {ErrorCode::kNotFound, "not_found"},
    {ErrorCode::kConflict, "conflict"},
    {ErrorCode::kIngestion, "ingestion"},
    {ErrorCode::kKeyFile, "key_file"},
    {ErrorCode::kUnreachable, "unreachable"},
}};

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "unknown";
}

ErrorCode ErrorCodeFromName(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return ErrorCode::kProtocol;
}

}  // namespace shrq
