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

#include "cred/revocable_kem.h"

#include <gtest/gtest.h>

#include "support/oracles.h"
#include "support/scenario.h"

namespace cred {
namespace {

using testing::Authority;

const CipherElement& Gc() { return PairingContext::Default().cipher_generator; }
const KeyElement& Gk() { return PairingContext::Default().key_generator; }

AccessMatrix Matrix(std::string_view text) {
  return *CompilePolicy(*ParsePolicy(text));
}

Encapsulation<RevCiphertext> Encrypt(const RevMasterPublicKey& mpk,
                                     std::string_view policy, Rng& rng) {
  auto enc = RevEncrypt(mpk, Matrix(policy), std::nullopt, rng);
  EXPECT_TRUE(enc.ok()) << enc.error().ToString();
  return *enc;
}

const std::vector<std::string> kUniverse = {"a", "b", "c", "d", "e"};

TEST(RevSetup, FreshState) {
  Authority auth(kUniverse, 8, 31);
  const RevMasterPublicKey& mpk = auth.mpk();
  const RevMasterSecretKey& msk = auth.msk();
  EXPECT_TRUE(mpk.acc.IsIdentity());
  EXPECT_TRUE(mpk.members.empty());
  EXPECT_EQ(mpk.epoch, 0u);
  EXPECT_EQ(mpk.params.powers.size(), 15u);
  EXPECT_FALSE(mpk.params.HasPower(9));
  EXPECT_EQ(mpk.g_b, Gc().Pow(msk.b));
  const TargetElement egg = Pair(Gc(), Gk());
  EXPECT_EQ(mpk.blind, Pair(mpk.acc, Gk()).Pow(msk.alpha) *
                           Pair(mpk.g_b, Gk()).Pow(msk.gamma.Pow(9)));
  EXPECT_EQ(mpk.blind, egg.Pow(msk.b * msk.gamma.Pow(9)));
}

TEST(RevSetup, Validation) {
  DeterministicRng rng(1);
  EXPECT_EQ(RevSetup(testing::Universe(65), 4, rng).code(),
            ErrorCode::kUniverseTooLarge);
  EXPECT_FALSE(RevSetup(kUniverse, 0, rng).ok());
}

TEST(RevKeyGen, SequentialIndicesAndKeyShape) {
  Authority auth(kUniverse, 4, 32);
  Scalar t;
  const Index i = auth.Issue({"a", "b"}, &t);
  EXPECT_EQ(i, 1u);
  EXPECT_EQ(auth.mpk().epoch, 1u);
  const RevSecretKey& key = auth.IssuedKey(i);
  const RevMasterSecretKey& msk = auth.msk();
  EXPECT_EQ(key.k, Gk().Pow(msk.alpha + msk.a * msk.b * t + msk.b * msk.gamma.Pow(i)));
  EXPECT_EQ(key.l, Gk().Pow(msk.b * t));
  EXPECT_EQ(key.k_x.at("a"), Gk().Pow(msk.z.at("a") * t));
  EXPECT_EQ(key.witness.index, i);
  EXPECT_EQ(auth.Issue({}), 2u);
  EXPECT_EQ(auth.mpk().epoch, 2u);
}

TEST(RevKeyGen, Errors) {
  Authority auth(kUniverse, 2, 33);
  RevMasterSecretKey msk = auth.msk();
  DeterministicRng rng(2);
  EXPECT_EQ(RevKeyGen(auth.mpk(), msk, {"zz"}, rng).code(),
            ErrorCode::kUnknownAttribute);
  auth.Issue({});
  auth.Issue({});
  msk = auth.msk();
  EXPECT_EQ(RevKeyGen(auth.mpk(), msk, {"a"}, rng).code(),
            ErrorCode::kCapacityExceeded);
  // Revoking does not free the index for reissue.
  auth.Revoke(1);
  msk = auth.msk();
  EXPECT_EQ(RevKeyGen(auth.mpk(), msk, {"a"}, rng).code(),
            ErrorCode::kCapacityExceeded);
}

TEST(RevKeyGen, IssuanceStalesOlderWitnesses) {
  Authority auth(kUniverse, 4, 34);
  const Index first = auth.Issue({"a"});
  AccumulatorState state = auth.msk().state;
  EXPECT_TRUE(VerifyMembership(auth.mpk().params, state,
                               auth.IssuedKey(first).witness, auth.msk().gamma));
  auth.Issue({"b"});
  state = auth.msk().state;
  EXPECT_FALSE(VerifyMembership(auth.mpk().params, state,
                                auth.IssuedKey(first).witness, auth.msk().gamma));
  auto updated = auth.CurrentKey(first);
  ASSERT_TRUE(updated.ok());
  EXPECT_TRUE(VerifyMembership(auth.mpk().params, state, updated->witness,
                               auth.msk().gamma));
}

TEST(RevKeyGen, FreshKeyRoundTrip) {
  Authority auth(kUniverse, 4, 35);
  const Index i = auth.Issue({"a", "c"});
  const auto enc = Encrypt(auth.mpk(), "AND(a,OR(b,c))", auth.rng());
  auto dec = RevDecrypt(auth.IssuedKey(i), enc.ciphertext);
  ASSERT_TRUE(dec.ok());
  EXPECT_EQ(*dec, enc.secret);
}

TEST(RevKeyRemove, OnlyKeyAndErrors) {
  Authority auth(kUniverse, 4, 36);
  const Index i = auth.Issue({"a"});
  auth.Revoke(i);
  EXPECT_TRUE(auth.mpk().acc.IsIdentity());
  EXPECT_EQ(auth.CurrentKey(i).code(), ErrorCode::kRevoked);
  RevMasterSecretKey msk = auth.msk();
  EXPECT_EQ(RevKeyRemove(auth.mpk(), msk, i).code(), ErrorCode::kIndexNotPresent);
}

TEST(RevUpdateKey, NoOpAndEpochChecks) {
  Authority auth(kUniverse, 4, 37);
  const Index i = auth.Issue({"a"});
  const RevSecretKey& key = auth.IssuedKey(i);
  auto same = RevUpdateKey(key, auth.mpk(), auth.mpk());
  ASSERT_TRUE(same.ok());
  EXPECT_EQ(*same, key);
  auth.Issue({"b"});
  EXPECT_EQ(RevUpdateKey(key, auth.mpk(), auth.mpk()).code(),
            ErrorCode::kEpochMismatch);
  auto moved = auth.CurrentKey(i);
  ASSERT_TRUE(moved.ok());
  EXPECT_EQ(moved->k, key.k);
  EXPECT_EQ(moved->l, key.l);
  EXPECT_EQ(moved->k_x, key.k_x);
  EXPECT_EQ(moved->epoch, auth.mpk().epoch);
}

TEST(RevUpdateKey, SurvivorAfterIssuancesAndRevocations) {
  Authority auth(kUniverse, 8, 38);
  const Index mine = auth.Issue({"a", "b"});
  for (int k = 0; k < 4; ++k) auth.Issue({"c"});
  auth.Revoke(2);
  auth.Revoke(4);
  auto key = auth.CurrentKey(mine);
  ASSERT_TRUE(key.ok());
  const auto enc = Encrypt(auth.mpk(), "AND(a,b)", auth.rng());
  auto dec = RevDecrypt(*key, enc.ciphertext);
  ASSERT_TRUE(dec.ok());
  EXPECT_EQ(*dec, enc.secret);
}

TEST(RevUpdateKey, DeltaDrivenUpdate) {
  Authority auth(kUniverse, 8, 39);
  const Index mine = auth.Issue({"a"});
  const RevSecretKey start = auth.IssuedKey(mine);
  const uint64_t from = auth.mpk().epoch;
  const IndexSet members = auth.members();
  auth.Issue({"b"});
  auth.Issue({"c"});
  auth.Revoke(2);
  const EpochDelta d = MakeDelta(from, members, auth.mpk().epoch, auth.members());
  auto via_delta = RevApplyDelta(start, auth.mpk().params, d);
  ASSERT_TRUE(via_delta.ok());
  EXPECT_EQ(*via_delta, *auth.CurrentKey(mine));
}

TEST(RevEncrypt, ShapeDeterminismAndEmptyAccumulator) {
  Authority auth(kUniverse, 4, 40);
  DeterministicRng rng(3);
  EXPECT_EQ(RevEncrypt(auth.mpk(), Matrix("a"), std::nullopt, rng).code(),
            ErrorCode::kEmptyAccumulator);
  auth.Issue({"a"});
  const Bytes seed = testing::ToBytes("rev seed");
  const AccessMatrix am = Matrix("AND(a,OR(b,c))");
  auto x = RevEncrypt(auth.mpk(), am, seed, rng);
  auto y = RevEncrypt(auth.mpk(), am, seed, rng);
  ASSERT_TRUE(x.ok() && y.ok());
  EXPECT_EQ(x->ciphertext, y->ciphertext);
  EXPECT_EQ(x->secret, y->secret);
  EXPECT_EQ(x->ciphertext.c_rows.size(), 3u);
  EXPECT_EQ(x->ciphertext.epoch, auth.mpk().epoch);
  const Scalar s = DeriveScalars(seed, am.columns)[0];
  EXPECT_EQ(x->ciphertext.c_prime, Gc().Pow(auth.msk().b * s));
  EXPECT_EQ(x->ciphertext.c_dprime, auth.mpk().acc.Pow(s));
  EXPECT_EQ(x->secret, auth.mpk().blind.Pow(s));
  EXPECT_EQ(RevEncrypt(auth.mpk(), Matrix("zz"), std::nullopt, rng).code(),
            ErrorCode::kUnknownAttribute);
}

TEST(RevDecrypt, RefusesMixedEpochsAndUnsatisfied) {
  Authority auth(kUniverse, 4, 41);
  const Index i = auth.Issue({"a"});
  auth.Issue({"b"});
  const auto enc = Encrypt(auth.mpk(), "a", auth.rng());
  EXPECT_EQ(RevDecrypt(auth.IssuedKey(i), enc.ciphertext).code(),
            ErrorCode::kEpochMismatch);
  const auto other = Encrypt(auth.mpk(), "AND(a,b)", auth.rng());
  EXPECT_EQ(RevDecrypt(*auth.CurrentKey(i), other.ciphertext).code(),
            ErrorCode::kNotSatisfied);
}

// Checks both halves of the correctness argument for one instance.
void CheckCorrectnessIdentity(uint64_t seed) {
  std::mt19937_64 gen(seed);
  Authority auth(kUniverse, 6, seed);
  testing::RandomHistory(auth, gen, 4, kUniverse);
  const Policy p = testing::RandomPolicy(gen, kUniverse, 5);
  const AttributeSet attrs = *testing::RandomSubset(gen, kUniverse, p, true);
  Scalar t;
  const Index i = auth.Issue(attrs, &t);
  const RevSecretKey& key = auth.IssuedKey(i);
  const RevMasterPublicKey& mpk = auth.mpk();
  const RevMasterSecretKey& msk = auth.msk();
  const Index n = mpk.params.capacity;

  const Bytes s_seed = testing::ToBytes("identity " + std::to_string(seed));
  const AccessMatrix am = *CompilePolicy(p);
  auto enc = RevEncrypt(mpk, am, s_seed, auth.rng());
  ASSERT_TRUE(enc.ok());
  const RevCiphertext& ct = enc->ciphertext;
  const Scalar s = DeriveScalars(s_seed, am.columns)[0];

  const TargetElement e_acc = Pair(mpk.acc, Gk());
  Scalar sum;
  for (Index j : mpk.members) sum += msk.gamma.Pow(n + 1 + i - j);
  const TargetElement numerator = e_acc.Pow(msk.alpha * s) *
                                  e_acc.Pow(s * msk.a * msk.b * t) *
                                  Pair(Gc().Pow(s), Gk()).Pow(msk.b * sum);
  EXPECT_EQ(Pair(ct.c_dprime, key.k), numerator);

  const auto omega = SolveReconstruction(am, attrs);
  ASSERT_TRUE(omega.has_value());
  TargetElement cancel;
  for (const auto& [k, w] : *omega) {
    cancel *= (Pair(ct.c_rows[k], key.l) * Pair(ct.c_prime, key.k_x.at(am.rho[k])))
                  .Pow(w);
  }
  EXPECT_EQ(cancel, e_acc.Pow(s * msk.a * msk.b * t));

  auto dec = RevDecrypt(key, ct);
  ASSERT_TRUE(dec.ok());
  EXPECT_EQ(*dec, enc->secret);
}

TEST(RevDecrypt, CorrectnessIdentityHolds) {
  for (uint64_t seed = 100; seed < 110; ++seed) CheckCorrectnessIdentity(seed);
}

TEST(RevDecrypt, RandomHistoriesEndToEnd) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 30; ++trial) {
    Authority auth(kUniverse, 8, 500 + trial);
    testing::RandomHistory(auth, gen, 10, kUniverse);
    const Policy p = testing::RandomPolicy(gen, kUniverse, 5);
    const AttributeSet attrs = *testing::RandomSubset(gen, kUniverse, p, true);
    if (auth.msk().next_index > auth.mpk().params.capacity) continue;
    const Index i = auth.Issue(attrs);
    testing::RandomHistory(auth, gen, 3, kUniverse);
    if (!auth.members().count(i)) continue;
    auto key = auth.CurrentKey(i);
    ASSERT_TRUE(key.ok());
    auto enc = RevEncrypt(auth.mpk(), *CompilePolicy(p), std::nullopt, auth.rng());
    ASSERT_TRUE(enc.ok());
    auto dec = RevDecrypt(*key, enc->ciphertext);
    ASSERT_TRUE(dec.ok());
    EXPECT_EQ(*dec, enc->secret);
  }
}

TEST(RevDecrypt, ForwardRevocation) {
  Authority auth(kUniverse, 6, 43);
  const Index victim = auth.Issue({"a", "b"});
  auth.Issue({"c"});
  const auto before = Encrypt(auth.mpk(), "AND(a,b)", auth.rng());
  const uint64_t before_epoch = auth.mpk().epoch;
  const RevSecretKey at_before = *auth.CurrentKey(victim);
  auth.Revoke(victim);
  const auto after = Encrypt(auth.mpk(), "AND(a,b)", auth.rng());

  EXPECT_EQ(auth.CurrentKey(victim).code(), ErrorCode::kRevoked);
  // Forcing the stale witness in under the new epoch yields garbage.
  RevSecretKey forced = at_before;
  forced.epoch = after.ciphertext.epoch;
  forced.witness.epoch = after.ciphertext.epoch;
  auto garbage = RevDecrypt(forced, after.ciphertext);
  ASSERT_TRUE(garbage.ok());
  EXPECT_FALSE(*garbage == after.secret);
  // The pre-revocation ciphertext still opens with the matching snapshot.
  EXPECT_EQ(at_before.epoch, before_epoch);
  auto old = RevDecrypt(at_before, before.ciphertext);
  ASSERT_TRUE(old.ok());
  EXPECT_EQ(*old, before.secret);
}

TEST(RevDecrypt, RollbackToOldSnapshot) {
  Authority auth(kUniverse, 6, 44);
  const Index i = auth.Issue({"a"});
  const auto old = Encrypt(auth.mpk(), "a", auth.rng());
  const uint64_t old_epoch = auth.mpk().epoch;
  auth.Issue({"b"});
  auth.Issue({"c"});
  const RevSecretKey current = *auth.CurrentKey(i);
  auto rolled = RevUpdateKey(current, auth.mpk(), auth.Snapshot(old_epoch));
  ASSERT_TRUE(rolled.ok());
  auto dec = RevDecrypt(*rolled, old.ciphertext);
  ASSERT_TRUE(dec.ok());
  EXPECT_EQ(*dec, old.secret);
}

}  // namespace
}  // namespace cred
