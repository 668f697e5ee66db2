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

#include "scenario.h"

#include <stdexcept>

namespace cred::testing {

namespace {

template <typename T>
T Unwrap(Result<T> r) {
  if (!r.ok()) throw std::runtime_error(r.error().ToString());
  return std::move(r).value();
}

}  // namespace

Authority::Authority(const std::vector<std::string>& universe, Index capacity,
                     uint64_t seed)
    : rng_(seed) {
  RevSetupOutput out = Unwrap(RevSetup(universe, capacity, rng_));
  mpk_ = std::move(out.mpk);
  msk_ = std::move(out.msk);
  snapshots_.emplace(mpk_.epoch, mpk_);
}

Index Authority::Issue(const AttributeSet& attrs, Scalar* t_out) {
  if (t_out != nullptr) {
    DeterministicRng replay = rng_;
    *t_out = Scalar::Random(replay);
  }
  RevKeyGenOutput out = Unwrap(RevKeyGen(mpk_, msk_, attrs, rng_));
  mpk_ = std::move(out.mpk);
  snapshots_.emplace(mpk_.epoch, mpk_);
  const Index i = out.key.index;
  keys_.emplace(i, std::move(out.key));
  return i;
}

void Authority::Revoke(Index i) {
  mpk_ = Unwrap(RevKeyRemove(mpk_, msk_, i));
  snapshots_.emplace(mpk_.epoch, mpk_);
}

Result<RevSecretKey> Authority::CurrentKey(Index i) const {
  const RevSecretKey& key = keys_.at(i);
  return RevUpdateKey(key, snapshots_.at(key.epoch), mpk_);
}

void RandomHistory(Authority& authority, std::mt19937_64& gen, size_t events,
                   const std::vector<std::string>& universe) {
  const size_t n = std::uniform_int_distribution<size_t>(1, events)(gen);
  for (size_t e = 0; e < n; ++e) {
    const IndexSet& members = authority.members();
    const bool can_issue =
        authority.msk().next_index <= authority.mpk().params.capacity;
    const bool remove = members.size() > 1 && (!can_issue || gen() % 3 == 0);
    if (remove) {
      auto it = members.begin();
      std::advance(it, gen() % members.size());
      authority.Revoke(*it);
    } else if (can_issue) {
      AttributeSet attrs;
      for (const auto& a : universe) {
        if (gen() & 1) attrs.insert(a);
      }
      authority.Issue(attrs);
    }
  }
  if (authority.members().empty()) authority.Issue({});
}

}  // namespace cred::testing
