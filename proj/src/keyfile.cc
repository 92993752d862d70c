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

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "shrq/crypto.h"
#include "shrq/errors.h"

namespace shrq {
namespace {

using wire::Json;

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kKeyFile, "key file: " + what);
}

const Json& Get(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) Bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string GetString(const Json& j, const char* name) {
  const Json& f = Get(j, name);
  if (!f.is_string()) Bad(std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

mpz_class GetDecimal(const Json& j, const char* name) {
  try {
    return FromDecimal(GetString(j, name));
  } catch (const std::invalid_argument&) {
    Bad(std::string("field '") + name + "' is not a decimal integer");
  }
}

template <typename T>
T GetNumber(const Json& j, const char* name) {
  const Json& f = Get(j, name);
  if (!f.is_number_integer()) Bad(std::string("field '") + name + "' must be an integer");
  return f.get<T>();
}

std::vector<mpz_class> GetDecimalArray(const Json& j, const char* name) {
  const Json& f = Get(j, name);
  if (!f.is_array()) Bad(std::string("field '") + name + "' must be an array");
  std::vector<mpz_class> out;
  for (const Json& item : f) {
    if (!item.is_string()) Bad(std::string("entries of '") + name + "' must be strings");
    try {
      out.push_back(FromDecimal(item.get<std::string>()));
    } catch (const std::invalid_argument&) {
      Bad(std::string("entry of '") + name + "' is not a decimal integer");
    }
  }
  return out;
}

Json DecimalArray(const std::vector<mpz_class>& xs) {
  Json out = Json::array();
  for (const mpz_class& x : xs) out.push_back(ToDecimal(x));
  return out;
}

GElement GetElement(const Json& j, const char* name, const BilinearGroup& group) {
  try {
    return group.DecodeG(Base64Decode(GetString(j, name)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kKeyFile) throw;
    Bad(std::string("field '") + name + "' is not a group element: " + e.what());
  }
}

}  // namespace

Json KeyFileToJson(const KeyFile& key) {
  const SecretKey& sk = key.sk;
  const DeploymentConfig& c = key.config;
  const BilinearGroup& grp = *sk.group;
  Json j = {
      {"lambda", sk.params.lambda},
      {"backend", std::string(BackendName(sk.params.group.backend))},
      {"q1", ToDecimal(sk.params.q1)},
      {"q2", ToDecimal(sk.params.q2)},
      {"N", ToDecimal(sk.n())},
      {"g", Base64Encode(grp.Encode(sk.g))},
      {"u", Base64Encode(grp.Encode(sk.u))},
      {"s", Base64Encode(grp.Encode(sk.s))},
      {"h", Base64Encode(grp.Encode(sk.h))},
      {"A", DecimalArray(sk.a)},
      {"B", DecimalArray(sk.b)},
      {"alpha", ToDecimal(sk.alpha)},
      {"beta", ToDecimal(sk.beta)},
      {"aes_key", Base64Encode(sk.aes_key)},
      {"layout", std::string(LayoutName(c.layout))},
      {"d", c.d},
      {"v", c.v},
      {"x_max", c.x_max},
      {"protocol", std::string(ProtocolName(c.protocol))},
      {"E_max", c.e_max},
      {"b_c", c.b_c},
      {"offset", c.offset},
  };
  if (sk.params.group.backend == Backend::kCurveA1) {
    j["p"] = ToDecimal(sk.params.group.field_prime);
    j["l"] = ToDecimal(sk.params.group.cofactor);
  }
  return j;
}

KeyFile KeyFileFromJson(const Json& j) {
  if (!j.is_object()) Bad("top level must be an object");
  KeyFile key;
  DeploymentConfig& c = key.config;
  SecretKey& sk = key.sk;
  try {
    c.backend = BackendFromName(GetString(j, "backend"));
    c.layout = LayoutFromName(GetString(j, "layout"));
    c.protocol = ProtocolFromName(GetString(j, "protocol"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kKeyFile) throw;
    Bad(e.what());
  }
  c.lambda = GetNumber<int>(j, "lambda");
  int64_t d = GetNumber<int64_t>(j, "d");
  int64_t v = GetNumber<int64_t>(j, "v");
  int64_t x_max = GetNumber<int64_t>(j, "x_max");
  if (d <= 0 || v < 0 || x_max < 0) Bad("d, v, x_max out of range");
  c.d = static_cast<size_t>(d);
  c.v = static_cast<uint64_t>(v);
  c.x_max = static_cast<uint64_t>(x_max);
  c.e_max = GetNumber<int>(j, "E_max");
  c.offset = GetNumber<int64_t>(j, "offset");
  int64_t stored_bc = GetNumber<int64_t>(j, "b_c");
  try {
    ValidateConfig(c);
  } catch (const Error& e) {
    Bad(e.what());
  }
  if (stored_bc != c.b_c) Bad("b_c does not match floor(sqrt(v)/(2 sqrt(d)+1))");

  GroupParams& params = sk.params;
  params.lambda = c.lambda;
  params.q1 = GetDecimal(j, "q1");
  params.q2 = GetDecimal(j, "q2");
  params.group.backend = c.backend;
  params.group.order = GetDecimal(j, "N");
  if (c.backend == Backend::kCurveA1) {
    params.group.field_prime = GetDecimal(j, "p");
    params.group.cofactor = GetDecimal(j, "l");
  }
  try {
    ValidateGroupParams(params);
    sk.group = MakeGroup(params.group);
  } catch (const Error& e) {
    Bad(e.what());
  }
  sk.g = GetElement(j, "g", *sk.group);
  sk.u = GetElement(j, "u", *sk.group);
  sk.s = GetElement(j, "s", *sk.group);
  sk.h = GetElement(j, "h", *sk.group);
  sk.a = GetDecimalArray(j, "A");
  sk.b = GetDecimalArray(j, "B");
  sk.alpha = GetDecimal(j, "alpha");
  sk.beta = GetDecimal(j, "beta");
  Bytes aes;
  try {
    aes = Base64Decode(GetString(j, "aes_key"));
  } catch (const Error& e) {
    Bad(std::string("aes_key: ") + e.what());
  }
  if (aes.size() != sk.aes_key.size()) Bad("aes_key must be 32 bytes");
  std::copy(aes.begin(), aes.end(), sk.aes_key.begin());
  sk.layout = c.layout;
  sk.d = c.d;
  sk.v = c.v;
  sk.x_max = c.x_max;
  VerifySecretKey(sk);
  return key;
}

void SaveKeyFile(const KeyFile& key, const std::string& path) {
  std::string text = KeyFileToJson(key).dump(2) + "\n";
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
  if (fd < 0) Bad("cannot write " + path);
  size_t off = 0;
  while (off < text.size()) {
    ssize_t n = ::write(fd, text.data() + off, text.size() - off);
    if (n <= 0) {
      ::close(fd);
      Bad("write to " + path + " failed");
    }
    off += static_cast<size_t>(n);
  }
  ::close(fd);
}

KeyFile LoadKeyFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Bad("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) Bad(path + " is not valid JSON");
  return KeyFileFromJson(j);
}

}  // namespace shrq
