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

#include <gtest/gtest.h>

#include "shrq/errors.h"

namespace shrq {
namespace {

TEST(WireTest, DescriptorRoundTrip) {
  for (Backend b : {Backend::kTransparent, Backend::kCurveA1}) {
    GroupDescriptor desc = GroupFromPrimes(5, 7, b).group;
    EXPECT_EQ(wire::DecodeDescriptor(wire::EncodeDescriptor(desc)), desc);
  }
  EXPECT_THROW(wire::DecodeDescriptor(wire::Json::object()), Error);
}

TEST(WireTest, SlotsRoundTripAndValidate) {
  Random rng(1);
  GroupParams params = GroupGen(16, Backend::kCurveA1, rng);
  auto group = MakeGroup(params.group);
  std::vector<GElement> slots = {group->RandomElement(rng), group->Identity(),
                                 group->RandomElement(rng)};
  wire::Json j = wire::EncodeSlots(*group, slots);
  EXPECT_EQ(wire::DecodeSlots(*group, j), slots);
  wire::Json bad = j;
  bad[0] = "AAAA";
  EXPECT_THROW(wire::DecodeSlots(*group, bad), Error);
  EXPECT_THROW(wire::DecodeSlots(*group, wire::Json(3)), Error);
}

TEST(WireTest, ParseAndFields) {
  wire::Json j = wire::Parse(R"({"type":"delete","id":5,"n":-2})");
  EXPECT_EQ(wire::StringField(j, "type"), "delete");
  EXPECT_EQ(wire::UintField(j, "id"), 5u);
  EXPECT_EQ(wire::IntField(j, "n"), -2);
  EXPECT_THROW(wire::UintField(j, "n"), Error);
  EXPECT_THROW(wire::Field(j, "missing"), Error);
  EXPECT_THROW(wire::StringField(j, "id"), Error);
  EXPECT_THROW(wire::Parse("[1,2]"), Error);
  EXPECT_THROW(wire::Parse("{oops"), Error);
  EXPECT_EQ(wire::Serialize(wire::Delete(9)).find('\n'), std::string::npos);
  EXPECT_EQ(wire::Parse(wire::Serialize(wire::Delete(9))), wire::Delete(9));
}

TEST(WireTest, ReplyHandling) {
  EXPECT_NO_THROW(wire::ExpectAck(wire::Ack()));
  std::vector<wire::Match> matches = {{3, {1, 2}}, {8, {}}};
  EXPECT_EQ(wire::ExpectResult(wire::Result(matches)), matches);
  try {
    wire::ExpectAck(wire::ErrorReply(ErrorCode::kConflict, "id 3 exists"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConflict);
    EXPECT_NE(std::string(e.what()).find("id 3 exists"), std::string::npos);
  }
  EXPECT_THROW(wire::ExpectAck(wire::Result({})), Error);
  EXPECT_THROW(wire::ExpectResult(wire::Ack()), Error);
}

TEST(ErrorCodeTest, NamesRoundTrip) {
  for (ErrorCode c : {ErrorCode::kConfig, ErrorCode::kSetup, ErrorCode::kQueryUnsupported,
                      ErrorCode::kUnsupportedLayout, ErrorCode::kProtocol,
                      ErrorCode::kDataIntegrity, ErrorCode::kNotFound, ErrorCode::kConflict,
                      ErrorCode::kIngestion, ErrorCode::kKeyFile, ErrorCode::kUnreachable}) {
    EXPECT_EQ(ErrorCodeFromName(ErrorCodeName(c)), c);
  }
}

}  // namespace
}  // namespace shrq
