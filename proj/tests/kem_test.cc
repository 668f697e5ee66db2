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

#include "cred/kem.h"

#include <gtest/gtest.h>

#include "support/oracles.h"

namespace cred {
namespace {

const CipherElement& Gc() { return PairingContext::Default().cipher_generator; }
const KeyElement& Gk() { return PairingContext::Default().key_generator; }

class BaseKemTest : public ::testing::Test {
 protected:
  void SetUp() override {
    auto out = BaseSetup(universe_, rng_);
    ASSERT_TRUE(out.ok());
    mpk_ = out->mpk;
    msk_ = out->msk;
  }

  BaseKey Key(const AttributeSet& attrs) {
    auto key = BaseKeyGen(mpk_, msk_, attrs, rng_);
    EXPECT_TRUE(key.ok());
    return *key;
  }

  AccessMatrix Matrix(std::string_view text) {
    return *CompilePolicy(*ParsePolicy(text));
  }

  std::vector<std::string> universe_ = testing::Universe(16);
  DeterministicRng rng_{11};
  BaseMpk mpk_;
  BaseMsk msk_;
};

TEST_F(BaseKemTest, SetupShape) {
  EXPECT_EQ(mpk_.h.size(), 16u);
  EXPECT_EQ(Pair(Gc().Pow(msk_.alpha), Gk()), mpk_.egg_alpha);
  EXPECT_EQ(Gc().Pow(msk_.a), mpk_.g_a);
  for (const auto& [x, z] : msk_.z) EXPECT_EQ(Gc().Pow(z), mpk_.h.at(x));
}

TEST_F(BaseKemTest, SetupFreshRandomness) {
  DeterministicRng other(12);
  auto second = BaseSetup(universe_, other);
  ASSERT_TRUE(second.ok());
  EXPECT_FALSE(second->mpk.egg_alpha == mpk_.egg_alpha);
}

TEST_F(BaseKemTest, SetupValidatesUniverse) {
  EXPECT_EQ(BaseSetup(testing::Universe(65), rng_).code(),
            ErrorCode::kUniverseTooLarge);
  EXPECT_FALSE(BaseSetup({}, rng_).ok());
  EXPECT_FALSE(BaseSetup({"a", "a"}, rng_).ok());
  EXPECT_FALSE(BaseSetup({"Bad"}, rng_).ok());
  EXPECT_TRUE(BaseSetup(testing::Universe(100), rng_, 100).ok());
}

TEST_F(BaseKemTest, KeyGenPublicIdentity) {
  const BaseKey key = Key({"attr0", "attr3"});
  EXPECT_EQ(Pair(Gc(), key.k), mpk_.egg_alpha * Pair(mpk_.g_a, key.l));
  for (const auto& [x, kx] : key.k_x) {
    EXPECT_EQ(Pair(Gc(), kx), Pair(mpk_.h.at(x), key.l));
  }
}

TEST_F(BaseKemTest, KeyGenEmptyAndUnknown) {
  const BaseKey empty = Key({});
  EXPECT_TRUE(empty.k_x.empty());
  EXPECT_FALSE(empty.l.IsIdentity());
  EXPECT_EQ(BaseKeyGen(mpk_, msk_, {"nope"}, rng_).code(),
            ErrorCode::kUnknownAttribute);
}

TEST_F(BaseKemTest, KeyGenFreshT) {
  EXPECT_FALSE(Key({"attr0"}).l == Key({"attr0"}).l);
}

TEST_F(BaseKemTest, SeededEncryptionIsDeterministic) {
  const AccessMatrix am = Matrix("AND(attr0,OR(attr1,attr2))");
  const Bytes seed = testing::ToBytes("fixed seed");
  auto a = BaseEncrypt(mpk_, am, seed, rng_);
  auto b = BaseEncrypt(mpk_, am, seed, rng_);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->ciphertext, b->ciphertext);
  EXPECT_EQ(a->secret, b->secret);
  // The secret is egg_alpha^s with s the first derived scalar.
  const Scalar s = DeriveScalars(seed, am.columns)[0];
  EXPECT_EQ(a->secret, mpk_.egg_alpha.Pow(s));
  EXPECT_EQ(a->ciphertext.c_prime, Gc().Pow(s));
}

TEST_F(BaseKemTest, CiphertextMatchesShares) {
  const AccessMatrix am = Matrix("AND(attr0,OR(attr1,attr2))");
  const Bytes seed = testing::ToBytes("shares");
  auto enc = BaseEncrypt(mpk_, am, seed, rng_);
  ASSERT_TRUE(enc.ok());
  const std::vector<Scalar> v = DeriveScalars(seed, am.columns);
  const std::vector<Scalar> lambda = ComputeShares(am, v);
  for (size_t k = 0; k < am.row_count(); ++k) {
    const Scalar z = msk_.z.at(am.rho[k]);
    EXPECT_EQ(enc->ciphertext.c_rows[k], Gc().Pow(msk_.a * lambda[k] - z * v[0]));
  }
}

TEST_F(BaseKemTest, SingleLeafShape) {
  auto enc = BaseEncrypt(mpk_, Matrix("attr5"), std::nullopt, rng_);
  ASSERT_TRUE(enc.ok());
  EXPECT_EQ(enc->ciphertext.c_rows.size(), 1u);
}

TEST_F(BaseKemTest, EncryptRejectsOutsideUniverse) {
  EXPECT_EQ(BaseEncrypt(mpk_, Matrix("AND(attr0,other)"), std::nullopt, rng_)
                .code(),
            ErrorCode::kUnknownAttribute);
}

TEST_F(BaseKemTest, EmptyKeySatisfiesNothing) {
  const BaseKey empty = Key({});
  auto enc = BaseEncrypt(mpk_, Matrix("OR(attr0,attr1)"), std::nullopt, rng_);
  ASSERT_TRUE(enc.ok());
  EXPECT_EQ(BaseDecrypt(empty, enc->ciphertext).code(), ErrorCode::kNotSatisfied);
}

TEST_F(BaseKemTest, RandomCorrectnessAndSoundness) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Policy p = testing::RandomPolicy(gen, universe_, 8);
    const AccessMatrix am = *CompilePolicy(p);
    const bool want = trial % 2 == 0;
    auto attrs = testing::RandomSubset(gen, universe_, p, want);
    ASSERT_TRUE(attrs.has_value());
    const BaseKey key = Key(*attrs);
    auto enc = BaseEncrypt(mpk_, am, std::nullopt, rng_);
    ASSERT_TRUE(enc.ok());
    auto dec = BaseDecrypt(key, enc->ciphertext);
    if (want) {
      ASSERT_TRUE(dec.ok()) << CanonicalPolicy(p);
      EXPECT_EQ(*dec, enc->secret);
    } else {
      EXPECT_EQ(dec.code(), ErrorCode::kNotSatisfied);
    }
  }
}

TEST_F(BaseKemTest, MixedKeysDoNotDecrypt) {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const Policy p = testing::RandomPolicy(gen, universe_, 6);
    const AttributeSet attrs = *testing::RandomSubset(gen, universe_, p, true);
    const BaseKey a = Key(attrs);
    const BaseKey b = Key(attrs);
    BaseKey mixed = a;
    mixed.k_x = b.k_x;
    auto enc = BaseEncrypt(mpk_, *CompilePolicy(p), std::nullopt, rng_);
    ASSERT_TRUE(enc.ok());
    auto dec = BaseDecrypt(mixed, enc->ciphertext);
    ASSERT_TRUE(dec.ok());
    EXPECT_FALSE(*dec == enc->secret);
  }
}

TEST(DrawShareVector, SeedOrderIsSFirst) {
  DeterministicRng rng(1);
  const Bytes seed = testing::ToBytes("order");
  EXPECT_EQ(DrawShareVector(4, seed, rng), DeriveScalars(seed, 4));
  DeterministicRng r1(5), r2(5);
  const auto v = DrawShareVector(3, std::nullopt, r1);
  EXPECT_EQ(v[0], Scalar::Random(r2));
}

}  // namespace
}  // namespace cred
