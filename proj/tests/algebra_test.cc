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

#include "cred/algebra.h"

#include <gtest/gtest.h>

#include <set>

#include "support/oracles.h"

namespace cred {
namespace {

using testing::FromHex;
using testing::Hex;
using testing::ToBytes;

const CipherElement& Gc() { return PairingContext::Default().cipher_generator; }
const KeyElement& Gk() { return PairingContext::Default().key_generator; }

TEST(Scalar, FieldArithmetic) {
  const Scalar two = Scalar::FromUint64(2);
  const Scalar three = Scalar::FromUint64(3);
  EXPECT_EQ(two * three, Scalar::FromUint64(6));
  EXPECT_EQ(two - three, Scalar::FromInt64(-1));
  EXPECT_EQ(three * three.Inverse(), Scalar::One());
  EXPECT_EQ(two.Pow(10), Scalar::FromUint64(1024));
  EXPECT_TRUE(Scalar::Zero().Inverse().IsZero());
}

TEST(Scalar, EncodingIsBigEndianAndStrict) {
  EXPECT_EQ(Hex(Scalar::FromUint64(0x0102).Encode()),
            std::string(60, '0') + "0102");
  // p - 1 decodes; p does not.
  const Bytes p_minus_1 = FromHex(
      "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000000");
  const Bytes p = FromHex(
      "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001");
  auto decoded = Scalar::Decode(p_minus_1);
  ASSERT_TRUE(decoded.ok());
  EXPECT_EQ(*decoded, Scalar::FromInt64(-1));
  EXPECT_FALSE(Scalar::Decode(p).ok());
  EXPECT_FALSE(Scalar::Decode(Bytes(31, 0)).ok());
}

TEST(Scalar, ReductionMatchesOrder) {
  const Bytes p = FromHex(PairingContext::Default().order_hex);
  EXPECT_TRUE(Scalar::FromBytesReduced(p).IsZero());
  Bytes p_plus_5 = p;
  p_plus_5.back() += 5;
  EXPECT_EQ(Scalar::FromBytesReduced(p_plus_5), Scalar::FromUint64(5));
}

TEST(Pairing, SmallExponentBilinearity) {
  const TargetElement base = Pair(Gc(), Gk());
  EXPECT_FALSE(base.IsOne());
  EXPECT_EQ(Pair(Gc().Pow(Scalar::FromUint64(2)), Gk().Pow(Scalar::FromUint64(3))),
            base.Pow(Scalar::FromUint64(6)));
  EXPECT_TRUE(Pair(CipherElement::Identity(), Gk()).IsOne());
  EXPECT_TRUE(Pair(Gc(), KeyElement::Identity()).IsOne());
}

TEST(Pairing, RandomBilinearity) {
  DeterministicRng rng(1);
  const TargetElement base = Pair(Gc(), Gk());
  for (int i = 0; i < 100; ++i) {
    const Scalar x = Scalar::Random(rng);
    const Scalar y = Scalar::Random(rng);
    const TargetElement lhs = Pair(Gc().Pow(x), Gk().Pow(y));
    EXPECT_EQ(lhs, base.Pow(x * y));
    if (i < 50) {
      EXPECT_EQ(lhs, Pair(Gc().Pow(y), Gk().Pow(x)));
    }
  }
}

TEST(Pairing, ProductMatchesIndividualPairings) {
  DeterministicRng rng(2);
  PairingProduct product;
  TargetElement expected;
  for (int i = 0; i < 4; ++i) {
    const CipherElement a = Gc().Pow(Scalar::Random(rng));
    const KeyElement b = Gk().Pow(Scalar::Random(rng));
    product.Add(a, b);
    expected *= Pair(a, b);
  }
  product.Add(CipherElement::Identity(), Gk());
  EXPECT_EQ(product.Finish(), expected);
  EXPECT_TRUE(PairingProduct().Finish().IsOne());
}

TEST(Groups, InverseAndIdentity) {
  DeterministicRng rng(3);
  const Scalar x = Scalar::Random(rng);
  EXPECT_TRUE((Gc().Pow(x) * Gc().Pow(x).Inverse()).IsIdentity());
  EXPECT_TRUE((Gk().Pow(x) * Gk().Pow(-x)).IsIdentity());
  EXPECT_TRUE(CipherElement::Identity().Pow(x).IsIdentity());
  const TargetElement t = Pair(Gc(), Gk()).Pow(x);
  EXPECT_TRUE((t * t.Inverse()).IsOne());
}

template <typename Element>
void CheckEncodings(const Element& generator, int count) {
  DeterministicRng rng(4);
  std::set<std::string> seen;
  for (int i = 0; i < count; ++i) {
    const Element e = generator.Pow(Scalar::Random(rng));
    const auto bytes = e.Encode();
    ASSERT_EQ(bytes.size(), Element::kEncodedSize);
    auto back = Element::Decode(bytes);
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(*back, e);
    seen.insert(Hex(bytes));
  }
  EXPECT_EQ(seen.size(), static_cast<size_t>(count));
  auto identity = Element::Decode(Element::Identity().Encode());
  ASSERT_TRUE(identity.ok());
  EXPECT_TRUE(identity->IsIdentity());
}

TEST(Groups, CipherEncodingRoundTrip) { CheckEncodings(Gc(), 1000); }
TEST(Groups, KeyEncodingRoundTrip) { CheckEncodings(Gk(), 1000); }

TEST(Groups, CompressedGeneratorsMatchCurveStandard) {
  EXPECT_EQ(Hex(Gc().Encode()),
            "97f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac58"
            "6c55e83ff97a1aeffb3af00adb22c6bb");
  EXPECT_EQ(Hex(Gk().Encode()),
            "93e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049"
            "334cf11213945d57e5ac7d055d042b7e024aa2b2f08f0a91260805272dc51051"
            "c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8");
}

TEST(Groups, RejectsMalformedPoints) {
  auto bytes = Gc().Encode();
  bytes[47] ^= 0x01;  // almost surely off the curve
  EXPECT_FALSE(CipherElement::Decode(bytes).ok());
  EXPECT_FALSE(CipherElement::Decode(Bytes(47, 0)).ok());
  EXPECT_FALSE(KeyElement::Decode(Bytes(96, 0xff)).ok());
}

TEST(Target, EncodingRoundTripAndCanonical) {
  DeterministicRng rng(5);
  std::set<std::string> seen;
  const TargetElement base = Pair(Gc(), Gk());
  for (int i = 0; i < 200; ++i) {
    const Scalar x = Scalar::Random(rng);
    const TargetElement t = base.Pow(x);
    const Bytes bytes = t.Encode();
    ASSERT_EQ(bytes.size(), TargetElement::kEncodedSize);
    auto back = TargetElement::Decode(bytes);
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(*back, t);
    // Same element reached another way encodes identically.
    EXPECT_EQ(Pair(Gc().Pow(x), Gk()).Encode(), bytes);
    seen.insert(Hex(bytes));
  }
  EXPECT_EQ(seen.size(), 200u);
  Bytes garbage = base.Encode();
  garbage[100] ^= 1;
  EXPECT_FALSE(TargetElement::Decode(garbage).ok());
}

TEST(Hashes, MatchIndependentSha256) {
  for (const std::string msg : {"", "abc", "a longer input with some bytes"}) {
    const Bytes data = ToBytes(msg);
    Bytes kdf_input = ToBytes("cred1/kdf");
    kdf_input.insert(kdf_input.end(), data.begin(), data.end());
    Bytes seed_input = ToBytes("cred1/seed");
    seed_input.insert(seed_input.end(), data.begin(), data.end());
    EXPECT_EQ(KdfHash(data), testing::Sha256(kdf_input));
    EXPECT_EQ(SeedHash(data), testing::Sha256(seed_input));
    EXPECT_NE(KdfHash(data), SeedHash(data));
  }
}

TEST(Hashes, OracleSha256KnownAnswer) {
  EXPECT_EQ(Hex(testing::Sha256(ToBytes("abc"))),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Prg, LengthContract) {
  const Bytes seed = ToBytes("seed");
  for (size_t bits : {256u, 512u, 4096u}) {
    EXPECT_EQ(PrgExpand(seed, bits).size() * 8, bits);
  }
  EXPECT_EQ(PrgExpand(seed, 512), PrgExpand(seed, 512));
  EXPECT_THROW(PrgExpand(seed, 12), std::invalid_argument);
}

TEST(Prg, MatchesIndependentShake256) {
  // Oracle self-check against the published empty-input answer.
  EXPECT_EQ(Hex(testing::Shake256({}, 32)),
            "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f");
  EXPECT_EQ(PrgExpand({}, 4096), testing::Shake256({}, 512));
  Bytes seed(300);
  for (size_t i = 0; i < seed.size(); ++i) seed[i] = static_cast<uint8_t>(i * 7);
  for (size_t bytes : {1u, 135u, 136u, 137u, 1000u}) {
    EXPECT_EQ(PrgExpand(seed, bytes * 8), testing::Shake256(seed, bytes));
  }
}

TEST(DeriveScalars, ReadsOversampledChunks) {
  const Bytes seed = ToBytes("derive");
  const std::vector<Scalar> s = DeriveScalars(seed, 5);
  ASSERT_EQ(s.size(), 5u);
  const Bytes stream = testing::Shake256(seed, 5 * Scalar::kSampleSize);
  for (size_t i = 0; i < 5; ++i) {
    const ByteView chunk(stream.data() + i * Scalar::kSampleSize,
                         Scalar::kSampleSize);
    EXPECT_EQ(s[i], Scalar::FromBytesReduced(chunk));
  }
  EXPECT_EQ(DeriveScalars(seed, 5), s);
  // Prefix property: a longer draw starts with the shorter one.
  const std::vector<Scalar> more = DeriveScalars(seed, 7);
  EXPECT_TRUE(std::equal(s.begin(), s.end(), more.begin()));
}

TEST(DeriveScalars, OneByteSeedChangeChangesOutput) {
  Bytes seed = ToBytes("derive");
  const auto a = DeriveScalars(seed, 3);
  seed[0] ^= 1;
  const auto b = DeriveScalars(seed, 3);
  for (size_t i = 0; i < 3; ++i) EXPECT_FALSE(a[i] == b[i]);
}

TEST(DeriveScalars, OutputsAreCanonical) {
  // Every derived scalar re-decodes strictly, so it lies in [0, p).
  const auto values = DeriveScalars(ToBytes("range"), 10000);
  for (const Scalar& s : values) ASSERT_TRUE(Scalar::Decode(s.Encode()).ok());
}

TEST(Rng, DeterministicStreamsRepeat) {
  DeterministicRng a(42), b(42), c(43);
  EXPECT_EQ(a.Draw(300), b.Draw(300));
  EXPECT_NE(a.Draw(32), c.Draw(32));
  SystemRng sys;
  EXPECT_NE(sys.Draw(32), sys.Draw(32));
}

}  // namespace
}  // namespace cred
