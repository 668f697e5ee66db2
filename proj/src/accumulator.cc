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

#include <algorithm>
#include <iterator>

namespace cred {

namespace {

IndexSet Difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

// Multiplies in seq[n+1+i-j] for j in `added` and divides out the ones for
// j in `removed`. Neither set may contain i.
KeyElement ShiftWitness(const AccParams& params, KeyElement wit, Index i,
                        const IndexSet& added, const IndexSet& removed) {
  const Index n = params.capacity;
  for (Index j : added) wit *= params.Power(n + 1 + i - j);
  for (Index j : removed) wit *= params.Power(n + 1 + i - j).Inverse();
  return wit;
}

}  // namespace

bool AccParams::HasPower(Index j) const {
  return j >= 1 && j <= 2 * capacity && j != capacity + 1;
}

const KeyElement& AccParams::Power(Index j) const {
  return powers[j <= capacity ? j - 1 : j - 2];
}

Result<AccInitOutput> AccInit(Index capacity, const Scalar& gamma) {
  if (capacity == 0 || capacity > kMaxCapacity) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "accumulator capacity out of range");
  }
  const KeyElement& g = PairingContext::Default().key_generator;
  AccInitOutput out;
  out.params.capacity = capacity;
  out.params.powers.reserve(2 * capacity - 1);
  Scalar power = gamma;
  for (Index j = 1; j <= 2 * capacity; ++j, power *= gamma) {
    if (j == capacity + 1) continue;
    out.params.powers.push_back(g.Pow(power));
  }
  return out;
}

Scalar AccumulatorExponent(Index capacity, const IndexSet& members,
                           const Scalar& gamma) {
  Scalar sum;
  for (Index j : members) sum += gamma.Pow(capacity + 1 - j);
  return sum;
}

CipherElement AccumulatorValue(Index capacity, const IndexSet& members,
                               const Scalar& gamma) {
  return PairingContext::Default().cipher_generator.Pow(
      AccumulatorExponent(capacity, members, gamma));
}

Result<AccumulatorState> AccUpdate(const AccParams& params,
                                   const AccumulatorState& state,
                                   std::optional<Index> add,
                                   std::optional<Index> remove,
                                   const Scalar& gamma) {
  if (add.has_value() == remove.has_value()) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "exactly one of add/remove must be given");
  }
  AccumulatorState next = state;
  if (add) {
    if (*add == 0 || *add > params.capacity) {
      return MakeError(ErrorCode::kCapacityExceeded,
                       "index " + std::to_string(*add));
    }
    if (state.members.count(*add) != 0) {
      return MakeError(ErrorCode::kIndexInUse, "index " + std::to_string(*add));
    }
    next.members.insert(*add);
    next.ever_added.insert(*add);
  } else {
    if (state.members.count(*remove) == 0) {
      return MakeError(ErrorCode::kIndexNotPresent,
                       "index " + std::to_string(*remove));
    }
    next.members.erase(*remove);
  }
  next.value = AccumulatorValue(params.capacity, next.members, gamma);
  next.epoch = state.epoch + 1;
  return next;
}

Result<Witness> ComputeWitness(const AccParams& params, const IndexSet& members,
                               Index i, uint64_t epoch) {
  if (members.count(i) == 0) {
    return MakeError(ErrorCode::kNotMember, "index " + std::to_string(i));
  }
  IndexSet others = members;
  others.erase(i);
  Witness w;
  w.index = i;
  w.value = ShiftWitness(params, KeyElement::Identity(), i, others, {});
  w.epoch = epoch;
  return w;
}

Result<Witness> UpdateWitness(const AccParams& params, const Witness& old,
                              const IndexSet& v_old, const IndexSet& v_new,
                              uint64_t new_epoch) {
  const Index i = old.index;
  if (v_old.count(i) == 0) {
    return MakeError(ErrorCode::kNotMember,
                     "index " + std::to_string(i) + " not in the old set");
  }
  if (v_new.count(i) == 0) {
    return MakeError(ErrorCode::kRevoked,
                     "index " + std::to_string(i) + " was removed");
  }
  Witness w;
  w.index = i;
  w.value = ShiftWitness(params, old.value, i, Difference(v_new, v_old),
                         Difference(v_old, v_new));
  w.epoch = new_epoch;
  return w;
}

Result<Witness> ApplyDelta(const AccParams& params, const Witness& old,
                           const EpochDelta& delta) {
  if (old.epoch != delta.from) {
    return MakeError(ErrorCode::kEpochMismatch,
                     "witness at epoch " + std::to_string(old.epoch) +
                         ", delta starts at " + std::to_string(delta.from));
  }
  if (delta.removed.count(old.index) != 0) {
    return MakeError(ErrorCode::kRevoked,
                     "index " + std::to_string(old.index) + " was removed");
  }
  if (delta.added.count(old.index) != 0) {
    return MakeError(ErrorCode::kNotMember,
                     "index " + std::to_string(old.index) + " not in the old set");
  }
  Witness w;
  w.index = old.index;
  w.value = ShiftWitness(params, old.value, old.index, delta.added,
                         delta.removed);
  w.epoch = delta.to;
  return w;
}

EpochDelta MakeDelta(uint64_t from, const IndexSet& v_from, uint64_t to,
                     const IndexSet& v_to) {
  return EpochDelta{from, to, Difference(v_to, v_from),
                    Difference(v_from, v_to)};
}

bool VerifyMembership(const AccParams& params, const AccumulatorState& state,
                      const Witness& w, const Scalar& gamma) {
  if (!params.HasPower(w.index) || w.index > params.capacity) return false;
  const auto& ctx = PairingContext::Default();
  const TargetElement lhs = Pair(state.value, params.Power(w.index));
  const TargetElement rhs =
      Pair(ctx.cipher_generator, w.value) *
      Pair(ctx.cipher_generator, ctx.key_generator)
          .Pow(gamma.Pow(params.capacity + 1));
  return lhs == rhs;
}

}  // namespace cred
