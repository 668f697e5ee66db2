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

#include "cred/accumulator.h"

#include <gtest/gtest.h>

#include <random>

namespace cred {
namespace {

const CipherElement& Gc() { return PairingContext::Default().cipher_generator; }
const KeyElement& Gk() { return PairingContext::Default().key_generator; }

// Independent witness oracle: computed straight from gamma.
KeyElement WitnessFromGamma(Index n, const IndexSet& v, Index i,
                            const Scalar& gamma) {
  Scalar e;
  for (Index j : v) {
    if (j != i) e += gamma.Pow(n + 1 + i - j);
  }
  return Gk().Pow(e);
}

class AccumulatorTest : public ::testing::Test {
 protected:
  void Init(Index n) {
    n_ = n;
    auto out = AccInit(n, gamma_);
    ASSERT_TRUE(out.ok());
    params_ = out->params;
    state_ = out->state;
  }

  AccumulatorState Update(std::optional<Index> add, std::optional<Index> remove) {
    auto next = AccUpdate(params_, state_, add, remove, gamma_);
    EXPECT_TRUE(next.ok());
    return *next;
  }

  DeterministicRng rng_{21};
  Scalar gamma_ = Scalar::Random(rng_);
  Index n_ = 0;
  AccParams params_;
  AccumulatorState state_;
};

TEST_F(AccumulatorTest, InitShape) {
  Init(4);
  EXPECT_EQ(params_.powers.size(), 7u);
  EXPECT_TRUE(state_.value.IsIdentity());
  EXPECT_TRUE(state_.members.empty());
  EXPECT_TRUE(state_.ever_added.empty());
  EXPECT_EQ(state_.epoch, 0u);
  EXPECT_FALSE(params_.HasPower(5));
  EXPECT_FALSE(params_.HasPower(0));
  EXPECT_FALSE(params_.HasPower(9));
  for (Index j : {1u, 2u, 3u, 4u, 6u, 7u, 8u}) {
    ASSERT_TRUE(params_.HasPower(j));
    EXPECT_EQ(params_.Power(j), Gk().Pow(gamma_.Pow(j)));
  }
}

TEST_F(AccumulatorTest, GammaPowerNPlusOneNeverPublished) {
  Init(6);
  const KeyElement forbidden = Gk().Pow(gamma_.Pow(7));
  for (const KeyElement& e : params_.powers) EXPECT_FALSE(e == forbidden);
}

TEST_F(AccumulatorTest, InitRejectsBadCapacity) {
  EXPECT_FALSE(AccInit(0, gamma_).ok());
  EXPECT_FALSE(AccInit(kMaxCapacity + 1, gamma_).ok());
}

TEST_F(AccumulatorTest, SingleAdd) {
  Init(4);
  const AccumulatorState s = Update(1, std::nullopt);
  EXPECT_EQ(s.value, Gc().Pow(gamma_.Pow(4)));
  EXPECT_EQ(s.epoch, 1u);
  EXPECT_EQ(s.members, IndexSet{1});
}

TEST_F(AccumulatorTest, AddThenRemoveRestoresIdentity) {
  Init(4);
  state_ = Update(2, std::nullopt);
  state_ = Update(std::nullopt, 2);
  EXPECT_TRUE(state_.value.IsIdentity());
  EXPECT_EQ(state_.epoch, 2u);
  EXPECT_EQ(state_.ever_added, IndexSet{2});
}

TEST_F(AccumulatorTest, ReAddAfterRemove) {
  Init(4);
  state_ = Update(3, std::nullopt);
  state_ = Update(std::nullopt, 3);
  EXPECT_TRUE(state_.ever_added.count(3));
  state_ = Update(3, std::nullopt);
  EXPECT_TRUE(state_.members.count(3));
  EXPECT_TRUE(state_.ever_added.count(3));
}

TEST_F(AccumulatorTest, UpdateErrors) {
  Init(4);
  state_ = Update(1, std::nullopt);
  EXPECT_EQ(AccUpdate(params_, state_, 1, std::nullopt, gamma_).code(),
            ErrorCode::kIndexInUse);
  EXPECT_EQ(AccUpdate(params_, state_, 5, std::nullopt, gamma_).code(),
            ErrorCode::kCapacityExceeded);
  EXPECT_EQ(AccUpdate(params_, state_, std::nullopt, 2, gamma_).code(),
            ErrorCode::kIndexNotPresent);
  EXPECT_FALSE(AccUpdate(params_, state_, 2, 1, gamma_).ok());
  EXPECT_FALSE(AccUpdate(params_, state_, std::nullopt, std::nullopt, gamma_).ok());
}

TEST_F(AccumulatorTest, WitnessExamples) {
  Init(4);
  auto alone = ComputeWitness(params_, {2}, 2, 0);
  ASSERT_TRUE(alone.ok());
  EXPECT_TRUE(alone->value.IsIdentity());
  auto w = ComputeWitness(params_, {1, 2}, 1, 0);
  ASSERT_TRUE(w.ok());
  EXPECT_EQ(w->value, params_.Power(4));
  EXPECT_EQ(ComputeWitness(params_, {1, 2}, 3, 0).code(), ErrorCode::kNotMember);
}

TEST_F(AccumulatorTest, WitnessMatchesGammaOracle) {
  Init(8);
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 20; ++trial) {
    IndexSet v;
    for (Index j = 1; j <= n_; ++j) {
      if (gen() & 1) v.insert(j);
    }
    for (Index i : v) {
      auto w = ComputeWitness(params_, v, i, 0);
      ASSERT_TRUE(w.ok());
      EXPECT_EQ(w->value, WitnessFromGamma(n_, v, i, gamma_));
    }
  }
}

TEST_F(AccumulatorTest, StoredValueMatchesRecomputation) {
  Init(6);
  std::mt19937_64 gen(23);
  for (int step = 0; step < 30; ++step) {
    const Index i = 1 + gen() % n_;
    state_ = state_.members.count(i) ? Update(std::nullopt, i)
                                     : Update(i, std::nullopt);
    EXPECT_EQ(state_.value, AccumulatorValue(n_, state_.members, gamma_));
    EXPECT_EQ(state_.value,
              Gc().Pow(AccumulatorExponent(n_, state_.members, gamma_)));
    EXPECT_EQ(state_.epoch, static_cast<uint64_t>(step + 1));
  }
}

TEST_F(AccumulatorTest, UpdateNoOpAndRevoked) {
  Init(4);
  auto w = ComputeWitness(params_, {1, 3}, 1, 5);
  ASSERT_TRUE(w.ok());
  auto same = UpdateWitness(params_, *w, {1, 3}, {1, 3}, 6);
  ASSERT_TRUE(same.ok());
  EXPECT_EQ(same->value, w->value);
  EXPECT_EQ(same->epoch, 6u);
  EXPECT_EQ(UpdateWitness(params_, *w, {1, 3}, {3}, 6).code(), ErrorCode::kRevoked);
  EXPECT_EQ(UpdateWitness(params_, *w, {3}, {1, 3}, 6).code(),
            ErrorCode::kNotMember);
}

TEST_F(AccumulatorTest, IncrementalEqualsFreshAcrossMutations) {
  Init(8);
  std::mt19937_64 gen(24);
  for (int trial = 0; trial < 10; ++trial) {
    Init(8);
    std::map<Index, Witness> wits;
    for (int step = 0; step < 10; ++step) {
      const IndexSet before = state_.members;
      const Index i = 1 + gen() % n_;
      state_ = before.count(i) ? Update(std::nullopt, i) : Update(i, std::nullopt);
      for (auto it = wits.begin(); it != wits.end();) {
        auto next = UpdateWitness(params_, it->second, before, state_.members,
                                  state_.epoch);
        if (state_.members.count(it->first)) {
          ASSERT_TRUE(next.ok());
          it->second = *next;
          ++it;
        } else {
          EXPECT_EQ(next.code(), ErrorCode::kRevoked);
          it = wits.erase(it);
        }
      }
      if (state_.members.count(i) && !wits.count(i)) {
        wits[i] = *ComputeWitness(params_, state_.members, i, state_.epoch);
      }
      for (const auto& [j, w] : wits) {
        auto fresh = ComputeWitness(params_, state_.members, j, state_.epoch);
        ASSERT_TRUE(fresh.ok());
        EXPECT_EQ(w, *fresh);
        EXPECT_TRUE(VerifyMembership(params_, state_, w, gamma_));
      }
    }
  }
}

TEST_F(AccumulatorTest, BatchDeltaEqualsStepwise) {
  std::mt19937_64 gen(25);
  for (int trial = 0; trial < 10; ++trial) {
    Init(8);
    state_ = Update(1, std::nullopt);
    const Witness start = *ComputeWitness(params_, state_.members, 1, state_.epoch);
    const AccumulatorState origin = state_;
    Witness stepwise = start;
    for (int step = 0; step < 10; ++step) {
      const Index i = 2 + gen() % (n_ - 1);
      const AccumulatorState before = state_;
      state_ = before.members.count(i) ? Update(std::nullopt, i)
                                       : Update(i, std::nullopt);
      const EpochDelta d =
          MakeDelta(before.epoch, before.members, state_.epoch, state_.members);
      auto next = ApplyDelta(params_, stepwise, d);
      ASSERT_TRUE(next.ok());
      stepwise = *next;
    }
    const EpochDelta batch =
        MakeDelta(origin.epoch, origin.members, state_.epoch, state_.members);
    auto batched = ApplyDelta(params_, start, batch);
    ASSERT_TRUE(batched.ok());
    EXPECT_EQ(*batched, stepwise);
  }
}

TEST_F(AccumulatorTest, ApplyDeltaChecksEpoch) {
  Init(4);
  const Witness w = *ComputeWitness(params_, {1}, 1, 3);
  EXPECT_EQ(ApplyDelta(params_, w, EpochDelta{2, 4, {2}, {}}).code(),
            ErrorCode::kEpochMismatch);
  EXPECT_EQ(ApplyDelta(params_, w, EpochDelta{3, 4, {}, {1}}).code(),
            ErrorCode::kRevoked);
  const EpochDelta d = MakeDelta(3, {1, 2}, 5, {1, 3});
  EXPECT_EQ(d.added, IndexSet{3});
  EXPECT_EQ(d.removed, IndexSet{2});
}

TEST_F(AccumulatorTest, VerifyMembershipCases) {
  Init(4);
  state_ = Update(1, std::nullopt);
  state_ = Update(2, std::nullopt);
  const Witness w1 = *ComputeWitness(params_, state_.members, 1, state_.epoch);
  EXPECT_TRUE(VerifyMembership(params_, state_, w1, gamma_));
  Witness wrong = w1;
  wrong.index = 2;
  EXPECT_FALSE(VerifyMembership(params_, state_, wrong, gamma_));
  // A removal makes the stale witness for a survivor fail until updated.
  state_ = Update(3, std::nullopt);
  state_ = Update(std::nullopt, 2);
  EXPECT_FALSE(VerifyMembership(params_, state_, w1, gamma_));
  const Witness removed = *ComputeWitness(params_, {1, 2}, 2, 0);
  EXPECT_FALSE(VerifyMembership(params_, state_, removed, gamma_));
}

}  // namespace
}  // namespace cred
