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

#include "cred/keystore.h"

#include <gtest/gtest.h>
#include <sys/stat.h>

#include <filesystem>

#include "cred/bytes.h"
#include "support/oracles.h"
#include "support/scenario.h"

namespace cred {
namespace {

namespace fs = std::filesystem;
using testing::Authority;

const std::vector<std::string> kUniverse = {"a", "b", "c", "d"};

class TempDir {
 public:
  TempDir() {
    char tmpl[] = "/tmp/cred-test-XXXXXX";
    path_ = ::mkdtemp(tmpl);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

template <typename T>
void ExpectRoundTrip(const T& value) {
  const Bytes bytes = Encode(value);
  auto back = Decode<T>(bytes);
  ASSERT_TRUE(back.ok()) << back.error().ToString();
  EXPECT_TRUE(*back == value);
  EXPECT_EQ(Encode(*back), bytes);
  // Every strict prefix is rejected.
  for (size_t len = 0; len < bytes.size(); len += 1 + len / 8) {
    auto cut = Decode<T>(ByteView(bytes).first(len));
    ASSERT_FALSE(cut.ok()) << len;
    EXPECT_EQ(cut.code(), ErrorCode::kMalformedEnvelope) << len;
  }
  Bytes longer = bytes;
  longer.push_back(0);
  EXPECT_EQ(Decode<T>(longer).code(), ErrorCode::kMalformedEnvelope);
}

class CodecTest : public ::testing::Test {
 protected:
  CodecTest() : auth_(kUniverse, 8, 71) {
    index_ = auth_.Issue({"a", "c"});
    auth_.Issue({"b"});
  }
  Authority auth_;
  Index index_ = 0;
  DeterministicRng rng_{72};
};

TEST_F(CodecTest, RevocableArtifactsRoundTrip) {
  for (int k = 0; k < 3; ++k) {
    ExpectRoundTrip(auth_.mpk());
    ExpectRoundTrip(auth_.msk());
    const RevSecretKey key = *auth_.CurrentKey(index_);
    ExpectRoundTrip(key);
    ExpectRoundTrip(key.witness);
    auto enc = RevEncrypt(auth_.mpk(), *CompilePolicy(*ParsePolicy("AND(a,OR(b,c))")),
                          std::nullopt, rng_);
    ASSERT_TRUE(enc.ok());
    ExpectRoundTrip(enc->ciphertext);
    SessionNonce r_c{};
    Token k_c{};
    rng_.Fill(r_c);
    rng_.Fill(k_c);
    auto bundle = CcaEncrypt(auth_.mpk(), *ParsePolicy("OR(a,d)"), r_c, k_c);
    ASSERT_TRUE(bundle.ok());
    ExpectRoundTrip(*bundle);
    ExpectRoundTrip(MakeDelta(2, {1, 2}, 5, {2, 3}));
    auth_.Issue({"d"});
  }
}

TEST_F(CodecTest, BaseArtifactsRoundTrip) {
  auto setup = BaseSetup(kUniverse, rng_);
  ASSERT_TRUE(setup.ok());
  ExpectRoundTrip(setup->mpk);
  ExpectRoundTrip(setup->msk);
  auto key = BaseKeyGen(setup->mpk, setup->msk, {"a", "b"}, rng_);
  ASSERT_TRUE(key.ok());
  ExpectRoundTrip(*key);
  ExpectRoundTrip(*BaseKeyGen(setup->mpk, setup->msk, {}, rng_));
  auto enc = BaseEncrypt(setup->mpk, *CompilePolicy(*ParsePolicy("AND(a,b)")),
                         std::nullopt, rng_);
  ASSERT_TRUE(enc.ok());
  ExpectRoundTrip(enc->ciphertext);
  auto bundle = CcaEncrypt(setup->mpk, *ParsePolicy("a"), SessionNonce{1}, Token{2});
  ASSERT_TRUE(bundle.ok());
  ExpectRoundTrip(*bundle);
}

TEST_F(CodecTest, SessionsRoundTrip) {
  ExpectRoundTrip(VerifierSession{"doc", "AND(a,b)", Token{9}, VerifierState::kClosed});
  ExpectRoundTrip(ProverSession{"doc", SessionNonce{7}, ProverState::kResponded});
}

TEST_F(CodecTest, EnvelopeHeader) {
  const Bytes bytes = Encode(auth_.mpk());
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "CRD1");
  EXPECT_EQ(bytes[4], static_cast<uint8_t>(ArtifactTag::kRevMasterPublicKey));
  auto header = PeekEnvelope(bytes);
  ASSERT_TRUE(header.ok());
  EXPECT_EQ(header->tag, ArtifactTag::kRevMasterPublicKey);
  EXPECT_EQ(header->suite, "CRED1");
  EXPECT_EQ(header->epoch, auth_.mpk().epoch);
}

TEST_F(CodecTest, SuiteMismatch) {
  RevMasterPublicKey mpk = auth_.mpk();
  mpk.suite = "CRED9";
  EXPECT_EQ(Decode<RevMasterPublicKey>(Encode(mpk)).code(), ErrorCode::kSuiteMismatch);
}

TEST_F(CodecTest, UnknownAndWrongTags) {
  Bytes bytes = Encode(auth_.IssuedKey(index_).witness);
  Bytes unknown = bytes;
  unknown[4] = 200;
  EXPECT_EQ(Decode<Witness>(unknown).code(), ErrorCode::kUnknownTag);
  EXPECT_EQ(PeekEnvelope(unknown).code(), ErrorCode::kUnknownTag);
  EXPECT_EQ(Decode<RevSecretKey>(bytes).code(), ErrorCode::kMalformedEnvelope);
  Bytes magic = bytes;
  magic[0] = 'X';
  EXPECT_EQ(Decode<Witness>(magic).code(), ErrorCode::kMalformedEnvelope);
}

TEST_F(CodecTest, EpochMismatchBetweenHeaderAndBody) {
  Bytes bytes = Encode(auth_.mpk());
  // Header epoch sits after magic, tag and the length-prefixed suite.
  bytes[4 + 1 + 4 + 5 + 7] ^= 1;
  EXPECT_EQ(Decode<RevMasterPublicKey>(bytes).code(), ErrorCode::kMalformedEnvelope);
}

TEST_F(CodecTest, NonCanonicalSetsRejected) {
  const Bytes good = Encode(EpochDelta{1, 2, {3, 5}, {}});
  Bytes swapped = good;
  // Body: from(8) to(8) count(4) 3 5 count(4).
  const size_t added = good.size() - 4 - 8;
  std::swap(swapped[added + 3], swapped[added + 7]);
  EXPECT_EQ(Decode<EpochDelta>(swapped).code(), ErrorCode::kMalformedEnvelope);
}

TEST_F(CodecTest, BundlePolicyMustMatchMatrix) {
  auto bundle = CcaEncrypt(auth_.mpk(), *ParsePolicy("AND(a,b)"), SessionNonce{},
                           Token{});
  ASSERT_TRUE(bundle.ok());
  ChallengeBundle swapped = *bundle;
  swapped.policy = "AND(b,a)";
  EXPECT_EQ(Decode<ChallengeBundle>(Encode(swapped)).code(),
            ErrorCode::kMalformedEnvelope);
  ChallengeBundle spaced = *bundle;
  spaced.policy = "AND(a, b)";
  EXPECT_EQ(Decode<ChallengeBundle>(Encode(spaced)).code(),
            ErrorCode::kMalformedEnvelope);
}

TEST_F(CodecTest, EqualArtifactsEncodeIdentically) {
  const RevSecretKey a = *auth_.CurrentKey(index_);
  const RevSecretKey b = *auth_.CurrentKey(index_);
  EXPECT_EQ(Encode(a), Encode(b));
  EXPECT_NE(Encode(a), Encode(auth_.IssuedKey(index_)));
}

TEST(Keystore, StoreLoadAndPermissions) {
  TempDir dir;
  Authority auth(kUniverse, 4, 73);
  auth.Issue({"a"});
  const fs::path msk_path = dir.path() / "msk.crd";
  ASSERT_TRUE(Store(msk_path, auth.msk()).ok());
  auto msk = Load<RevMasterSecretKey>(msk_path);
  ASSERT_TRUE(msk.ok());
  EXPECT_EQ(*msk, auth.msk());
  struct stat st {};
  ASSERT_EQ(::stat(msk_path.c_str(), &st), 0);
  EXPECT_EQ(st.st_mode & 0777, 0600u);

  auto bytes = ReadFile(msk_path);
  ASSERT_TRUE(bytes.ok());
  EXPECT_EQ(*bytes, Encode(auth.msk()));
  for (const auto& entry : fs::directory_iterator(dir.path())) {
    EXPECT_EQ(entry.path().filename(), "msk.crd");  // no temp files left
  }
}

TEST(Keystore, LoadErrors) {
  TempDir dir;
  EXPECT_EQ(Load<RevSecretKey>(dir.path() / "missing.crd").code(), ErrorCode::kIo);
  const fs::path junk = dir.path() / "junk.crd";
  const std::string text = "not an envelope";
  ASSERT_TRUE(WriteFileAtomic(junk, testing::ToBytes(text)).ok());
  EXPECT_EQ(Load<RevSecretKey>(junk).code(), ErrorCode::kMalformedEnvelope);
}

TEST(Keystore, MpkHistory) {
  TempDir tmp;
  StateDir dir(tmp.path() / "state");
  ASSERT_TRUE(dir.Create().ok());
  Authority auth(kUniverse, 4, 74);
  ASSERT_TRUE(dir.PublishMpk(auth.mpk()).ok());
  auth.Issue({"a"});
  ASSERT_TRUE(dir.PublishMpk(auth.mpk()).ok());
  auth.Issue({"b"});
  auth.Revoke(1);
  ASSERT_TRUE(dir.PublishMpk(auth.Snapshot(2)).ok());
  ASSERT_TRUE(dir.PublishMpk(auth.mpk()).ok());
  EXPECT_EQ(dir.MpkEpochs(), (std::vector<uint64_t>{0, 1, 2, 3}));
  for (uint64_t e = 0; e <= 3; ++e) {
    auto mpk = dir.LoadMpk(e);
    ASSERT_TRUE(mpk.ok());
    EXPECT_EQ(*mpk, auth.Snapshot(e));
  }
  auto latest = dir.LatestMpk();
  ASSERT_TRUE(latest.ok());
  EXPECT_EQ(latest->epoch, 3u);
  // Snapshots are never rewritten.
  EXPECT_EQ(dir.PublishMpk(auth.mpk()).code(), ErrorCode::kIo);
  EXPECT_EQ(dir.MpkPath(3).filename(), "mpk.3.crd");
  EXPECT_EQ(dir.KeyPath(2).filename(), "key.2.crd");
  EXPECT_EQ(dir.DeltaPath(1, 4).filename(), "delta.1-4.crd");

  const EpochDelta d = MakeDelta(1, auth.Snapshot(1).members, 3, auth.mpk().members);
  ASSERT_TRUE(dir.StoreDelta(d).ok());
  auto loaded = dir.LoadDelta(1, 3);
  ASSERT_TRUE(loaded.ok());
  EXPECT_EQ(*loaded, d);
}

TEST(Keystore, SnapshotFileMustHoldItsEpoch) {
  TempDir tmp;
  StateDir dir(tmp.path());
  Authority auth(kUniverse, 4, 75);
  auth.Issue({"a"});
  ASSERT_TRUE(Store(dir.MpkPath(0), auth.mpk()).ok());
  EXPECT_EQ(dir.LoadMpk(0).code(), ErrorCode::kMalformedEnvelope);
}

}  // namespace
}  // namespace cred
