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

// Newline-delimited JSON messages between the data owner / query user and
// the cloud server. Binary values travel as base64 of canonical encodings.
//
// Requests (field "type"):
//   hello      {N, group, hash, levels}
//   put_lookup {v, digests}            sorted raw digests, concatenated
//   put_store  {id, blob}
//   put_tuple  {level, id, slots}
//   delete     {id}
//   query      {level, slots}
// Replies:
//   ack        {}
//   error      {code, message}
//   result     {matches: [{id, blob}]}

#ifndef SHRQ_WIRE_H_
#define SHRQ_WIRE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "shrq/ces.h"
#include "shrq/errors.h"
#include "shrq/pairing.h"

namespace shrq::wire {

using Json = nlohmann::json;

struct Match {
  uint64_t id = 0;
  Bytes blob;

  bool operator==(const Match& other) const {
    return id == other.id && blob == other.blob;
  }
};

Json EncodeDescriptor(const GroupDescriptor& descriptor);
GroupDescriptor DecodeDescriptor(const Json& j);

Json Hello(const GroupDescriptor& descriptor, std::string_view hash_id,
           int levels);
Json PutLookup(const LookupTable& table);
Json PutStore(uint64_t id, std::span<const uint8_t> blob);
Json PutTuple(const BilinearGroup& group, int level, const EncryptedTuple& t);
Json Delete(uint64_t id);
Json Query(const BilinearGroup& group, const EncryptedQuery& q);

Json Ack();
Json ErrorReply(ErrorCode code, std::string_view message);
Json Result(const std::vector<Match>& matches);

Json EncodeSlots(const BilinearGroup& group, const std::vector<GElement>& slots);
std::vector<GElement> DecodeSlots(const BilinearGroup& group, const Json& j);

// Field accessors; all throw Error(kProtocol) on a missing or mistyped field.
const Json& Field(const Json& msg, const char* name);
std::string StringField(const Json& msg, const char* name);
uint64_t UintField(const Json& msg, const char* name);
int64_t IntField(const Json& msg, const char* name);

// One line, no trailing newline.
std::string Serialize(const Json& j);
// Throws Error(kProtocol) for anything but a JSON object.
Json Parse(std::string_view line);

// Client-side reply handling. An error reply is rethrown as Error with the
// code it carries.
void ExpectAck(const Json& reply);
std::vector<Match> ExpectResult(const Json& reply);

}  // namespace shrq::wire

#endif  // SHRQ_WIRE_H_
