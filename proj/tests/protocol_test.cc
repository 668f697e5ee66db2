// Copyright 2026 The cred Authors.
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

#include "cred/protocol.h"

#include <gtest/gtest.h>

#include "cred/codec.h"
#include "support/oracles.h"
#include "support/scenario.h"

namespace cred {
namespace {

using testing::Authority;

const std::vector<std::string> kUniverse = {"a", "b", "c", "d", "e"};

Policy P(std::string_view text) { return *ParsePolicy(text); }

Message RoundTrip(const Message& m) {
  auto back = DecodeFrame(EncodeFrame(m));
  EXPECT_TRUE(back.ok()) << back.error().ToString();
  return *back;
}

class ProtocolTest : public ::testing::Test {
 protected:
  ProtocolTest() : auth_(kUniverse, 8, 61) {
    member_ = auth_.Issue({"a", "b"});
    other_ = auth_.Issue({"c"});
  }

  RevSecretKey Key(Index i) { return *auth_.CurrentKey(i); }

  // Runs the four messages through the framing and returns the decision, or
  // the prover's abort.
  Result<Decision> Run(const Policy& policy, const RevSecretKey& key) {
    ProverStart p = ProverBegin("doc", rng_);
    auto request = std::get<ResourceRequest>(RoundTrip(p.request));
    CRED_ASSIGN_OR_RETURN(VerifierStart v,
                          VerifierOnRequest(request, policy, auth_.mpk(), rng_));
    auto challenge = std::get<Challenge>(RoundTrip(v.challenge));
    CRED_ASSIGN_OR_RETURN(Response r,
                          ProverOnChallenge(p.session, challenge, key, auth_.mpk()));
    auto response = std::get<Response>(RoundTrip(r));
    return std::get<Decision>(RoundTrip(VerifierOnResponse(v.session, response)));
  }

  Authority auth_;
  Index member_ = 0;
  Index other_ = 0;
  DeterministicRng rng_{62};
};

TEST_F(ProtocolTest, ProverStartIsFresh) {
  ProverStart a = ProverBegin("doc", rng_);
  ProverStart b = ProverBegin("doc", rng_);
  EXPECT_NE(a.request.r_c, b.request.r_c);
  EXPECT_EQ(a.request.resource_id, "doc");
  EXPECT_EQ(a.session.r_c, a.request.r_c);
  EXPECT_EQ(a.session.state, ProverState::kStarted);
}

TEST_F(ProtocolTest, FramesRoundTrip) {
  ProverStart p = ProverBegin("some/resource", rng_);
  EXPECT_EQ(RoundTrip(p.request), Message(p.request));
  auto v = VerifierOnRequest(p.request, P("OR(a,c)"), auth_.mpk(), rng_);
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(RoundTrip(v->challenge), Message(v->challenge));
  const Response r{"some/resource", Token{1, 2, 3}};
  EXPECT_EQ(RoundTrip(r), Message(r));
  const Decision d{true, "granted"};
  EXPECT_EQ(RoundTrip(d), Message(d));
}

TEST_F(ProtocolTest, FrameLayout) {
  const Decision d{false, "no"};
  const Bytes frame = EncodeFrame(d);
  // u32 payload length, tag, then (u32 len || bytes) per field.
  const Bytes want = {0, 0, 0, 11, 4, 0, 0, 0, 1, 0, 0, 0, 0, 2, 'n', 'o'};
  EXPECT_EQ(frame, want);
}

TEST_F(ProtocolTest, FrameRejects) {
  Bytes frame = EncodeFrame(Decision{true, "granted"});
  EXPECT_FALSE(DecodeFrame(ByteView(frame).first(frame.size() - 1)).ok());
  Bytes bad_tag = frame;
  bad_tag[4] = 9;
  EXPECT_EQ(DecodeFrame(bad_tag).code(), ErrorCode::kUnknownTag);
  Bytes trailing = frame;
  trailing.push_back(0);
  EXPECT_FALSE(DecodeFrame(trailing).ok());
  EXPECT_FALSE(DecodeFrame(EncodeFrame(Decision{true, ""})).ok());
  EXPECT_FALSE(DecodeFrame(EncodeFrame(ResourceRequest{"", {}})).ok());
  Bytes huge = {0xff, 0xff, 0xff, 0xff, 1};
  EXPECT_FALSE(ParseFrameHeader(huge).ok());
}

TEST_F(ProtocolTest, ChallengeFreshPerRequest) {
  ProverStart p = ProverBegin("doc", rng_);
  auto a = VerifierOnRequest(p.request, P("a"), auth_.mpk(), rng_);
  auto b = VerifierOnRequest(p.request, P("a"), auth_.mpk(), rng_);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_NE(a->session.k_c, b->session.k_c);
  EXPECT_NE(Encode(a->challenge.bundle), Encode(b->challenge.bundle));
  EXPECT_EQ(a->challenge.bundle.policy, "a");
  EXPECT_EQ(a->session.state, VerifierState::kChallenged);
}

TEST_F(ProtocolTest, HappyPathAndSoundness) {
  std::mt19937_64 gen(63);
  for (int trial = 0; trial < 50; ++trial) {
    const Policy p = testing::RandomPolicy(gen, kUniverse, 5);
    const AttributeSet attrs = *testing::RandomSubset(gen, kUniverse, p, true);
    if (auth_.msk().next_index > auth_.mpk().params.capacity) {
      auth_ = Authority(kUniverse, 8, 64 + trial);
    }
    const Index i = auth_.Issue(attrs);
    auto decision = Run(p, Key(i));
    ASSERT_TRUE(decision.ok()) << decision.error().ToString();
    EXPECT_TRUE(decision->granted);
    EXPECT_EQ(decision->reason, "granted");
  }
}

TEST_F(ProtocolTest, NonSatisfyingKeyAborts) {
  auto decision = Run(P("AND(a,b)"), Key(other_));
  ASSERT_FALSE(decision.ok());
  EXPECT_EQ(decision.code(), ErrorCode::kNotSatisfied);
}

TEST_F(ProtocolTest, ResponseReplayAcrossSessionsDenied) {
  const Policy policy = P("a");
  ProverStart p1 = ProverBegin("doc", rng_);
  auto v1 = VerifierOnRequest(p1.request, policy, auth_.mpk(), rng_);
  ASSERT_TRUE(v1.ok());
  auto r1 = ProverOnChallenge(p1.session, v1->challenge, Key(member_), auth_.mpk());
  ASSERT_TRUE(r1.ok());
  EXPECT_TRUE(VerifierOnResponse(v1->session, *r1).granted);

  ProverStart p2 = ProverBegin("doc", rng_);
  auto v2 = VerifierOnRequest(p2.request, policy, auth_.mpk(), rng_);
  ASSERT_TRUE(v2.ok());
  const Decision replayed = VerifierOnResponse(v2->session, *r1);
  EXPECT_FALSE(replayed.granted);
  EXPECT_EQ(replayed.reason, "token mismatch");
  // A session grants at most once, even to the right token.
  const Decision again = VerifierOnResponse(v1->session, *r1);
  EXPECT_FALSE(again.granted);
  EXPECT_EQ(again.reason, "session closed");
  EXPECT_FALSE(VerifierOnResponse(v2->session, *r1).granted);
}

TEST_F(ProtocolTest, ChallengeReplayAcrossSessionsAborts) {
  ProverStart p1 = ProverBegin("doc", rng_);
  auto v1 = VerifierOnRequest(p1.request, P("a"), auth_.mpk(), rng_);
  ASSERT_TRUE(v1.ok());
  ProverStart p2 = ProverBegin("doc", rng_);
  auto r = ProverOnChallenge(p2.session, v1->challenge, Key(member_), auth_.mpk());
  EXPECT_EQ(r.code(), ErrorCode::kNonceMismatch);
  EXPECT_EQ(p2.session.state, ProverState::kClosed);
  // A prover session answers at most one challenge.
  auto ok = ProverOnChallenge(p1.session, v1->challenge, Key(member_), auth_.mpk());
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(p1.session.state, ProverState::kResponded);
  EXPECT_FALSE(
      ProverOnChallenge(p1.session, v1->challenge, Key(member_), auth_.mpk()).ok());
}

TEST_F(ProtocolTest, ResourceMismatchDenied) {
  ProverStart p = ProverBegin("doc", rng_);
  auto v = VerifierOnRequest(p.request, P("a"), auth_.mpk(), rng_);
  ASSERT_TRUE(v.ok());
  auto r = ProverOnChallenge(p.session, v->challenge, Key(member_), auth_.mpk());
  ASSERT_TRUE(r.ok());
  Response wrong = *r;
  wrong.resource_id = "other";
  const Decision d = VerifierOnResponse(v->session, wrong);
  EXPECT_FALSE(d.granted);
  EXPECT_EQ(d.reason, "resource mismatch");
}

TEST_F(ProtocolTest, TranscriptsDependOnlyOnSatisfaction) {
  const Index twin = auth_.Issue({"a", "b", "e"});
  const Index third = auth_.Issue({"d"});
  std::mt19937_64 gen(65);
  for (int trial = 0; trial < 10; ++trial) {
    const Policy policy = trial % 2 ? P("AND(a,b)") : P("OR(a,AND(b,e))");
    SessionNonce r_c;
    Token k_c;
    rng_.Fill(r_c);
    rng_.Fill(k_c);
    auto respond = [&](Index i) -> Result<Bytes> {
      ProverStart p = ProverBegin("doc", r_c);
      CRED_ASSIGN_OR_RETURN(VerifierStart v,
                            VerifierOnRequest(p.request, policy, auth_.mpk(), k_c));
      CRED_ASSIGN_OR_RETURN(
          Response r, ProverOnChallenge(p.session, v.challenge, Key(i), auth_.mpk()));
      Bytes t = EncodeFrame(p.request);
      const Bytes f = EncodeFrame(r);
      t.insert(t.end(), f.begin(), f.end());
      return t;
    };
    auto x = respond(member_);
    auto y = respond(twin);
    ASSERT_TRUE(x.ok() && y.ok());
    EXPECT_EQ(*x, *y);
    EXPECT_FALSE(respond(third).ok());
    EXPECT_FALSE(respond(other_).ok());
  }
}

TEST_F(ProtocolTest, BaseModeSessions) {
  DeterministicRng rng(66);
  auto setup = BaseSetup(kUniverse, rng);
  ASSERT_TRUE(setup.ok());
  auto key = BaseKeyGen(setup->mpk, setup->msk, {"a"}, rng);
  ASSERT_TRUE(key.ok());
  ProverStart p = ProverBegin("doc", rng);
  auto v = VerifierOnRequest(p.request, P("OR(a,b)"), setup->mpk, rng);
  ASSERT_TRUE(v.ok());
  auto r = ProverOnChallenge(p.session, v->challenge, *key, setup->mpk);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(VerifierOnResponse(v->session, *r).granted);
}

}  // namespace
}  // namespace cred
