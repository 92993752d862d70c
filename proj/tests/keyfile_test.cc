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

#include "shrq/keyfile.h"

#include <gtest/gtest.h>
#include <stdlib.h>
#include <sys/stat.h>

#include <filesystem>

#include "shrq/errors.h"

namespace shrq {
namespace {

KeyFile MakeKey(Backend backend, Protocol protocol, int e_max) {
  Random rng(1);
  KeyFile key;
  key.config.protocol = protocol;
  key.config.e_max = e_max;
  key.config.backend = backend;
  key.config.lambda = backend == Backend::kTransparent ? 32 : 24;
  key.config.offset = 7;
  ValidateConfig(key.config);
  key.sk = KeyGen(key.config.ces(), rng).first;
  return key;
}

void ExpectKeyFileError(const wire::Json& j) {
  try {
    KeyFileFromJson(j);
    ADD_FAILURE() << "accepted a tampered key file";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKeyFile) << e.what();
  }
}

TEST(KeyFileTest, RoundTripBothBackends) {
  for (Backend b : {Backend::kTransparent, Backend::kCurveA1}) {
    KeyFile key = MakeKey(b, Protocol::kL, 2);
    KeyFile back = KeyFileFromJson(KeyFileToJson(key));
    EXPECT_EQ(KeyFileToJson(back), KeyFileToJson(key));
    EXPECT_EQ(back.config.b_c, 5);
    EXPECT_EQ(back.config.offset, 7);
    EXPECT_EQ(back.sk.s, key.sk.s);
  }
}

TEST(KeyFileTest, SingleFieldTamperIsRejected) {
  for (Backend b : {Backend::kTransparent, Backend::kCurveA1}) {
    KeyFile key = MakeKey(b, Protocol::kT, 0);
    wire::Json j = KeyFileToJson(key);
    const BilinearGroup& grp = *key.sk.group;

    wire::Json s = j;
    s["s"] = Base64Encode(grp.Encode(grp.Mul(key.sk.s, key.sk.s)));
    ExpectKeyFileError(s);
    wire::Json h = j;
    h["h"] = Base64Encode(grp.Encode(grp.Mul(key.sk.h, key.sk.g)));
    ExpectKeyFileError(h);
    for (const char* vec : {"A", "B"}) {
      wire::Json t = j;
      mpz_class x = FromDecimal(t[vec][1].get<std::string>()) + 1;
      t[vec][1] = ToDecimal(x);
      ExpectKeyFileError(t);
    }
    wire::Json q1 = j;
    q1["q1"] = "15";
    ExpectKeyFileError(q1);
    wire::Json bc = j;
    bc["b_c"] = 3;
    ExpectKeyFileError(bc);
    wire::Json missing = j;
    missing.erase("alpha");
    ExpectKeyFileError(missing);
    wire::Json garbage = j;
    garbage["g"] = "!!";
    ExpectKeyFileError(garbage);
  }
}

TEST(KeyFileTest, SavedWithOwnerOnlyMode) {
  std::string dir = (std::filesystem::temp_directory_path() / "shrq_key_XXXXXX").string();
  ASSERT_NE(mkdtemp(dir.data()), nullptr);
  std::string path = dir + "/key.json";
  KeyFile key = MakeKey(Backend::kTransparent, Protocol::kC, 3);
  SaveKeyFile(key, path);
  struct stat st;
  ASSERT_EQ(stat(path.c_str(), &st), 0);
  EXPECT_EQ(st.st_mode & 0777, 0600);
  EXPECT_EQ(KeyFileToJson(LoadKeyFile(path)), KeyFileToJson(key));
  EXPECT_THROW(LoadKeyFile(dir + "/absent.json"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace shrq
