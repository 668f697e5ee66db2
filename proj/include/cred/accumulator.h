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

// Bilinear accumulator over indices 1..n.
//
//   acc_V  = prod_{j in V} g_c^{gamma^{n+1-j}}
//   wit_i  = prod_{j in V, j != i} g_k^{gamma^{n+1+i-j}}
//   e(acc_V, g_k^{gamma^i}) = e(g_c, wit_i) * e(g_c, g_k)^{gamma^{n+1}}  iff i in V
//
// The public sequence g_k^{gamma^j}, j in [1..2n] \ {n+1}, is all a holder
// needs to maintain a witness. g_k^{gamma^{n+1}} is never built.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cred/algebra.h"
#include "cred/status.h"

namespace cred {

using Index = uint32_t;
using IndexSet = std::set<Index>;

inline constexpr Index kMaxCapacity = 1u << 16;

struct AccParams {
  Index capacity = 0;
  // g_k^{gamma^j} for j = 1..n, n+2..2n, in that order (2n - 1 entries).
  std::vector<KeyElement> powers;
  std::string suite{kSuiteId};

  bool HasPower(Index j) const;
  // Precondition: HasPower(j).
  const KeyElement& Power(Index j) const;

  bool operator==(const AccParams&) const = default;
};

struct AccumulatorState {
  IndexSet members;      // V
  IndexSet ever_added;   // U
  CipherElement value;   // acc_V
  uint64_t epoch = 0;

  bool operator==(const AccumulatorState&) const = default;
};

struct Witness {
  Index index = 0;
  KeyElement value;
  uint64_t epoch = 0;

  bool operator==(const Witness&) const = default;
};

// Published change between two consecutive (or distant) epochs.
struct EpochDelta {
  uint64_t from = 0;
  uint64_t to = 0;
  IndexSet added;
  IndexSet removed;

  bool operator==(const EpochDelta&) const = default;
};

struct AccInitOutput {
  AccParams params;
  AccumulatorState state;
};

Result<AccInitOutput> AccInit(Index capacity, const Scalar& gamma);

// sum_{j in members} gamma^{n+1-j}, the discrete log of acc_V.
Scalar AccumulatorExponent(Index capacity, const IndexSet& members,
                           const Scalar& gamma);

// Authority-side recomputation of acc_V from gamma.
CipherElement AccumulatorValue(Index capacity, const IndexSet& members,
                               const Scalar& gamma);

// Exactly one of add/remove must be set. Bumps the epoch by one.
Result<AccumulatorState> AccUpdate(const AccParams& params,
                                   const AccumulatorState& state,
                                   std::optional<Index> add,
                                   std::optional<Index> remove,
                                   const Scalar& gamma);

Result<Witness> ComputeWitness(const AccParams& params, const IndexSet& members,
                               Index i, uint64_t epoch);

// Local update from V_old to V_new. kRevoked when i is not in V_new.
Result<Witness> UpdateWitness(const AccParams& params, const Witness& old,
                              const IndexSet& v_old, const IndexSet& v_new,
                              uint64_t new_epoch);

// Same update driven by a published delta; old.epoch must equal delta.from.
Result<Witness> ApplyDelta(const AccParams& params, const Witness& old,
                           const EpochDelta& delta);

EpochDelta MakeDelta(uint64_t from, const IndexSet& v_from, uint64_t to,
                     const IndexSet& v_to);

// Authority-side pairing check of the membership identity.
bool VerifyMembership(const AccParams& params, const AccumulatorState& state,
                      const Witness& w, const Scalar& gamma);

}  // namespace cred
