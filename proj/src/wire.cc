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

#include "shrq/wire.h"

#include "shrq/crypto.h"

namespace shrq::wire {
namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kProtocol, what);
}

mpz_class DecimalField(const Json& msg, const char* name) {
  try {
    return FromDecimal(StringField(msg, name));
  } catch (const std::invalid_argument&) {
    Bad(std::string("field '") + name + "' is not a decimal integer");
  }
}

}  // namespace

Json EncodeDescriptor(const GroupDescriptor& descriptor) {
  Json j = {{"backend", std::string(BackendName(descriptor.backend))},
            {"N", ToDecimal(descriptor.order)}};
  if (descriptor.backend == Backend::kCurveA1) {
    j["p"] = ToDecimal(descriptor.field_prime);
    j["l"] = ToDecimal(descriptor.cofactor);
  }
  return j;
}

GroupDescriptor DecodeDescriptor(const Json& j) {
  if (!j.is_object()) Bad("group descriptor must be an object");
  GroupDescriptor d;
  try {
    d.backend = BackendFromName(StringField(j, "backend"));
  } catch (const Error& e) {
    Bad(e.what());
  }
  d.order = DecimalField(j, "N");
  if (d.backend == Backend::kCurveA1) {
    d.field_prime = DecimalField(j, "p");
    d.cofactor = DecimalField(j, "l");
  }
  return d;
}

Json Hello(const GroupDescriptor& descriptor, std::string_view hash_id,
           int levels) {
  return {{"type", "hello"},
          {"N", ToDecimal(descriptor.order)},
          {"group", EncodeDescriptor(descriptor)},
          {"hash", std::string(hash_id)},
          {"levels", levels}};
}

Json PutLookup(const LookupTable& table) {
  Bytes raw;
  raw.reserve(table.size() * 32);
  for (const Digest& d : table.digests()) raw.insert(raw.end(), d.begin(), d.end());
  return {{"type", "put_lookup"}, {"v", table.v()}, {"digests", Base64Encode(raw)}};
}

Json PutStore(uint64_t id, std::span<const uint8_t> blob) {
  return {{"type", "put_store"}, {"id", id}, {"blob", Base64Encode(blob)}};
}

Json PutTuple(const BilinearGroup& group, int level, const EncryptedTuple& t) {
  return {{"type", "put_tuple"},
          {"level", level},
          {"id", t.id},
          {"slots", EncodeSlots(group, t.slots)}};
}

Json Delete(uint64_t id) { return {{"type", "delete"}, {"id", id}}; }

Json Query(const BilinearGroup& group, const EncryptedQuery& q) {
  return {{"type", "query"},
          {"level", q.level},
          {"slots", EncodeSlots(group, q.slots)}};
}

Json Ack() { return {{"type", "ack"}}; }

Json ErrorReply(ErrorCode code, std::string_view message) {
  return {{"type", "error"},
          {"code", std::string(ErrorCodeName(code))},
          {"message", std::string(message)}};
}

Json Result(const std::vector<Match>& matches) {
  Json list = Json::array();
  for (const Match& m : matches) {
    list.push_back({{"id", m.id}, {"blob", Base64Encode(m.blob)}});
  }
  return {{"type", "result"}, {"matches", std::move(list)}};
}

Json EncodeSlots(const BilinearGroup& group, const std::vector<GElement>& slots) {
  Json list = Json::array();
  for (const GElement& x : slots) list.push_back(Base64Encode(group.Encode(x)));
  return list;
}

std::vector<GElement> DecodeSlots(const BilinearGroup& group, const Json& j) {
  if (!j.is_array()) Bad("slots must be an array");
  std::vector<GElement> out;
  out.reserve(j.size());
  for (const Json& item : j) {
    if (!item.is_string()) Bad("slot must be a base64 string");
    out.push_back(group.DecodeG(Base64Decode(item.get<std::string>())));
  }
  return out;
}

const Json& Field(const Json& msg, const char* name) {
  auto it = msg.find(name);
  if (it == msg.end()) Bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string StringField(const Json& msg, const char* name) {
  const Json& f = Field(msg, name);
  if (!f.is_string()) Bad(std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

uint64_t UintField(const Json& msg, const char* name) {
  const Json& f = Field(msg, name);
  if (!f.is_number_unsigned()) {
    Bad(std::string("field '") + name + "' must be a non-negative integer");
  }
  return f.get<uint64_t>();
}

int64_t IntField(const Json& msg, const char* name) {
  const Json& f = Field(msg, name);
  if (!f.is_number_integer()) {
    Bad(std::string("field '") + name + "' must be an integer");
  }
  return f.get<int64_t>();
}

std::string Serialize(const Json& j) { return j.dump(); }

Json Parse(std::string_view line) {
  Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) Bad("malformed JSON");
  if (!j.is_object()) Bad("message must be a JSON object");
  return j;
}

namespace {

void RethrowIfError(const Json& reply) {
  if (StringField(reply, "type") == "error") {
    std::string message = reply.value("message", std::string("server error"));
    throw Error(ErrorCodeFromName(reply.value("code", std::string("protocol"))),
                "server: " + message);
  }
}

}  // namespace

void ExpectAck(const Json& reply) {
  RethrowIfError(reply);
  if (StringField(reply, "type") != "ack") Bad("expected ack reply");
}

std::vector<Match> ExpectResult(const Json& reply) {
  RethrowIfError(reply);
  if (StringField(reply, "type") != "result") Bad("expected result reply");
  const Json& list = Field(reply, "matches");
  if (!list.is_array()) Bad("matches must be an array");
  std::vector<Match> out;
  out.reserve(list.size());
  for (const Json& m : list) {
    if (!m.is_object()) Bad("match must be an object");
    out.push_back(Match{UintField(m, "id"), Base64Decode(StringField(m, "blob"))});
  }
  return out;
}

}  // namespace shrq::wire
