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

#include "cred/cca.h"

#include <gtest/gtest.h>

#include "cred/codec.h"
#include "support/oracles.h"
#include "support/scenario.h"

namespace cred {
namespace {

using testing::Authority;

const std::vector<std::string> kUniverse = {"a", "b", "c", "d", "e", "f"};

template <size_t N>
std::array<uint8_t, N> Fill(Rng& rng) {
  std::array<uint8_t, N> out;
  rng.Fill(out);
  return out;
}

Policy P(std::string_view text) { return *ParsePolicy(text); }

class CcaTest : public ::testing::Test {
 protected:
  CcaTest() : auth_(kUniverse, 8, 51) {
    holder_ = auth_.Issue({"a", "b"});
    outsider_ = auth_.Issue({"c"});
  }

  RevSecretKey Holder() { return *auth_.CurrentKey(holder_); }
  RevSecretKey Outsider() { return *auth_.CurrentKey(outsider_); }

  Authority auth_;
  Index holder_ = 0;
  Index outsider_ = 0;
  DeterministicRng rng_{52};
};

// Any rejection counts: at decode time or at decryption.
bool Accepts(const Bytes& wire, const RevSecretKey& key,
             const SessionNonce& r_c, const RevMasterPublicKey& mpk) {
  auto bundle = Decode<ChallengeBundle>(wire);
  if (!bundle.ok()) return false;
  return CcaDecrypt(key, *bundle, r_c, mpk).ok();
}

TEST_F(CcaTest, RoundTrip) {
  const SessionNonce r_c = Fill<kNonceSize>(rng_);
  const Token k_c = Fill<kTokenSize>(rng_);
  auto bundle = CcaEncrypt(auth_.mpk(), P("AND(a,b)"), r_c, k_c);
  ASSERT_TRUE(bundle.ok());
  EXPECT_EQ(bundle->policy, "AND(a,b)");
  EXPECT_EQ(bundle->epoch, auth_.mpk().epoch);
  EXPECT_EQ(bundle->mode(), KemMode::kRevocable);
  auto token = CcaDecrypt(Holder(), *bundle, r_c, auth_.mpk());
  ASSERT_TRUE(token.ok());
  EXPECT_EQ(*token, k_c);
}

TEST_F(CcaTest, DeterministicAndPadStructure) {
  const SessionNonce r_c = Fill<kNonceSize>(rng_);
  const Token k_c = Fill<kTokenSize>(rng_);
  const Policy policy = P("OR(a,c)");
  auto x = CcaEncrypt(auth_.mpk(), policy, r_c, k_c);
  auto y = CcaEncrypt(auth_.mpk(), policy, r_c, k_c);
  ASSERT_TRUE(x.ok() && y.ok());
  EXPECT_EQ(Encode(*x), Encode(*y));

  // Rebuild the bundle from the primitives: seed, seeded encrypt, pad.
  Bytes seed_input(r_c.begin(), r_c.end());
  seed_input.insert(seed_input.end(), k_c.begin(), k_c.end());
  const Bytes policy_bytes = CanonicalPolicyBytes(policy);
  seed_input.insert(seed_input.end(), policy_bytes.begin(), policy_bytes.end());
  const auto seed = ChallengeSeed(r_c, k_c, "OR(a,c)");
  EXPECT_EQ(seed, SeedHash(seed_input));
  auto enc = RevEncrypt(auth_.mpk(), *CompilePolicy(policy), seed, rng_);
  ASSERT_TRUE(enc.ok());
  EXPECT_EQ(std::get<RevCiphertext>(x->abkem), enc->ciphertext);
  const auto pad = SecretPad(enc->secret);
  const Bytes kdf = testing::Shake256(KdfHash(enc->secret.Encode()), kPadSize);
  EXPECT_TRUE(std::equal(pad.begin(), pad.end(), kdf.begin()));
  for (size_t i = 0; i < kPadSize; ++i) {
    const uint8_t plain = i < kTokenSize ? k_c[i] : r_c[i - kTokenSize];
    EXPECT_EQ(x->c[i] ^ pad[i], plain);
  }
}

TEST_F(CcaTest, NonceBitFlipChangesCiphertext) {
  SessionNonce r_c = Fill<kNonceSize>(rng_);
  const Token k_c = Fill<kTokenSize>(rng_);
  auto x = CcaEncrypt(auth_.mpk(), P("a"), r_c, k_c);
  r_c[7] ^= 0x10;
  auto y = CcaEncrypt(auth_.mpk(), P("a"), r_c, k_c);
  ASSERT_TRUE(x.ok() && y.ok());
  EXPECT_FALSE(std::get<RevCiphertext>(x->abkem) == std::get<RevCiphertext>(y->abkem));
}

TEST_F(CcaTest, NonSatisfyingKeyRejects) {
  const SessionNonce r_c = Fill<kNonceSize>(rng_);
  auto bundle = CcaEncrypt(auth_.mpk(), P("AND(a,b)"), r_c, Fill<kTokenSize>(rng_));
  ASSERT_TRUE(bundle.ok());
  EXPECT_EQ(CcaDecrypt(Outsider(), *bundle, r_c, auth_.mpk()).code(),
            ErrorCode::kNotSatisfied);
}

TEST_F(CcaTest, WrongNonceRejects) {
  const SessionNonce r_c = Fill<kNonceSize>(rng_);
  auto bundle = CcaEncrypt(auth_.mpk(), P("a"), r_c, Fill<kTokenSize>(rng_));
  ASSERT_TRUE(bundle.ok());
  for (int i = 0; i < 20; ++i) {
    const SessionNonce other = Fill<kNonceSize>(rng_);
    EXPECT_EQ(CcaDecrypt(Holder(), *bundle, other, auth_.mpk()).code(),
              ErrorCode::kNonceMismatch);
  }
}

TEST_F(CcaTest, StaleKeyRejectsWithEpochMismatch) {
  const SessionNonce r_c = Fill<kNonceSize>(rng_);
  auto bundle = CcaEncrypt(auth_.mpk(), P("a"), r_c, Fill<kTokenSize>(rng_));
  ASSERT_TRUE(bundle.ok());
  EXPECT_EQ(CcaDecrypt(auth_.IssuedKey(holder_), *bundle, r_c, auth_.mpk()).code(),
            ErrorCode::kEpochMismatch);
}

TEST_F(CcaTest, ExhaustiveSingleByteTamper) {
  const SessionNonce r_c = Fill<kNonceSize>(rng_);
  auto bundle = CcaEncrypt(auth_.mpk(), P("AND(a,b)"), r_c, Fill<kTokenSize>(rng_));
  ASSERT_TRUE(bundle.ok());
  const Bytes wire = Encode(*bundle);
  const RevSecretKey key = Holder();
  ASSERT_TRUE(Accepts(wire, key, r_c, auth_.mpk()));
  for (size_t pos = 0; pos < wire.size(); ++pos) {
    Bytes tampered = wire;
    tampered[pos] ^= 0x01;
    EXPECT_FALSE(Accepts(tampered, key, r_c, auth_.mpk())) << "byte " << pos;
  }
}

TEST_F(CcaTest, StructuredTamperRejects) {
  const SessionNonce r_c = Fill<kNonceSize>(rng_);
  auto honest = CcaEncrypt(auth_.mpk(), P("AND(a,b)"), r_c, Fill<kTokenSize>(rng_));
  ASSERT_TRUE(honest.ok());
  const RevSecretKey key = Holder();
  for (size_t i = 0; i < kPadSize; ++i) {
    ChallengeBundle b = *honest;
    b.c[i] ^= 0x80;
    const ErrorCode want =
        i < kTokenSize ? ErrorCode::kReencryptMismatch : ErrorCode::kNonceMismatch;
    EXPECT_EQ(CcaDecrypt(key, b, r_c, auth_.mpk()).code(), want) << i;
  }
  const CipherElement g = PairingContext::Default().cipher_generator;
  ChallengeBundle b = *honest;
  auto& ct = std::get<RevCiphertext>(b.abkem);
  ct.c_rows[0] = ct.c_rows[0] * g;
  EXPECT_FALSE(CcaDecrypt(key, b, r_c, auth_.mpk()).ok());
  b = *honest;
  std::get<RevCiphertext>(b.abkem).c_dprime = g;
  EXPECT_FALSE(CcaDecrypt(key, b, r_c, auth_.mpk()).ok());
  b = *honest;
  b.policy = "AND(b,a)";
  EXPECT_FALSE(CcaDecrypt(key, b, r_c, auth_.mpk()).ok());
  b = *honest;
  b.suite = "CRED2";
  EXPECT_EQ(CcaDecrypt(key, b, r_c, auth_.mpk()).code(), ErrorCode::kSuiteMismatch);
}

TEST_F(CcaTest, RandomTamperAcrossInstances) {
  std::mt19937_64 gen(53);
  const RevSecretKey key = Holder();
  for (int trial = 0; trial < 25; ++trial) {
    const SessionNonce r_c = Fill<kNonceSize>(rng_);
    const Policy p = testing::RandomPolicy(gen, {"a", "b", "c", "d"}, 4);
    if (!testing::Evaluate(p, {"a", "b"})) continue;
    auto bundle = CcaEncrypt(auth_.mpk(), p, r_c, Fill<kTokenSize>(rng_));
    ASSERT_TRUE(bundle.ok());
    Bytes wire = Encode(*bundle);
    const size_t pos = gen() % wire.size();
    wire[pos] ^= static_cast<uint8_t>(1 + gen() % 255);
    EXPECT_FALSE(Accepts(wire, key, r_c, auth_.mpk())) << "byte " << pos;
  }
}

TEST(CcaBase, RoundTripAndRejects) {
  DeterministicRng rng(54);
  auto setup = BaseSetup(kUniverse, rng);
  ASSERT_TRUE(setup.ok());
  auto key = BaseKeyGen(setup->mpk, setup->msk, {"a", "b"}, rng);
  ASSERT_TRUE(key.ok());
  const SessionNonce r_c = Fill<kNonceSize>(rng);
  const Token k_c = Fill<kTokenSize>(rng);
  auto bundle = CcaEncrypt(setup->mpk, P("AND(a,b)"), r_c, k_c);
  ASSERT_TRUE(bundle.ok());
  EXPECT_EQ(bundle->mode(), KemMode::kBase);
  EXPECT_EQ(bundle->epoch, 0u);
  auto token = CcaDecrypt(*key, *bundle, r_c, setup->mpk);
  ASSERT_TRUE(token.ok());
  EXPECT_EQ(*token, k_c);
  ChallengeBundle tampered = *bundle;
  tampered.c[0] ^= 1;
  EXPECT_EQ(CcaDecrypt(*key, tampered, r_c, setup->mpk).code(),
            ErrorCode::kReencryptMismatch);
  const Bytes wire = Encode(*bundle);
  for (size_t pos = 0; pos < wire.size(); pos += 7) {
    Bytes t = wire;
    t[pos] ^= 0x20;
    auto decoded = Decode<ChallengeBundle>(t);
    if (decoded.ok()) {
      EXPECT_FALSE(CcaDecrypt(*key, *decoded, r_c, setup->mpk).ok()) << pos;
    }
  }
}

}  // namespace
}  // namespace cred
