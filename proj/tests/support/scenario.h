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

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cred/revocable_kem.h"
#include "cred/rng.h"

namespace cred::testing {

// Drives a revocable authority through issuance and revocation, keeping every
// published MPK and every issued key at its issuing epoch.
class Authority {
 public:
  Authority(const std::vector<std::string>& universe, Index capacity,
            uint64_t seed);

  // Issues a key and returns its index. `t_out`, when given, receives the
  // key's randomness (read by replaying the rng draw).
  Index Issue(const AttributeSet& attrs, Scalar* t_out = nullptr);
  void Revoke(Index i);

  // The issued key brought up to the current epoch via the public snapshots.
  Result<RevSecretKey> CurrentKey(Index i) const;

  const RevMasterPublicKey& mpk() const { return mpk_; }
  const RevMasterSecretKey& msk() const { return msk_; }
  const RevMasterPublicKey& Snapshot(uint64_t epoch) const {
    return snapshots_.at(epoch);
  }
  const RevSecretKey& IssuedKey(Index i) const { return keys_.at(i); }
  const IndexSet& members() const { return mpk_.members; }
  Rng& rng() { return rng_; }

 private:
  RevMasterPublicKey mpk_;
  RevMasterSecretKey msk_;
  std::map<uint64_t, RevMasterPublicKey> snapshots_;
  std::map<Index, RevSecretKey> keys_;
  DeterministicRng rng_;
};

// Random history of at most `events` issuance/revocation steps that leaves
// at least one member.
void RandomHistory(Authority& authority, std::mt19937_64& gen, size_t events,
                   const std::vector<std::string>& universe);

}  // namespace cred::testing
