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

// JSON key file holding the data owner's secret key and deployment config.
// Loading re-derives s = g^q1, h = u^q2 and A.B = 0 (mod q1) and refuses
// the file if any of them fails.

#ifndef SHRQ_KEYFILE_H_
#define SHRQ_KEYFILE_H_

#include <string>

#include "shrq/ces.h"
#include "shrq/protocols.h"
#include "shrq/wire.h"

namespace shrq {

struct KeyFile {
  DeploymentConfig config;
  SecretKey sk;
};

wire::Json KeyFileToJson(const KeyFile& key);
// Throws Error(kKeyFile).
KeyFile KeyFileFromJson(const wire::Json& j);

// Written with mode 0600.
void SaveKeyFile(const KeyFile& key, const std::string& path);
KeyFile LoadKeyFile(const std::string& path);

}  // namespace shrq

#endif  // SHRQ_KEYFILE_H_
