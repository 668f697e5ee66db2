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

namespace cred {

namespace {

const TargetElement& GeneratorPairing() {
  static const TargetElement e = Pair(PairingContext::Default().cipher_generator,
                                      PairingContext::Default().key_generator);
  return e;
}

// Refreshes the accumulator-dependent MPK terms from msk.state.
RevMasterPublicKey Republish(const RevMasterPublicKey& mpk,
                             const RevMasterSecretKey& msk) {
  RevMasterPublicKey out = mpk;
  out.acc = msk.state.value;
  out.acc_a = msk.state.value.Pow(msk.a);
  out.blind = ComputeBlind(msk, mpk.params.capacity, msk.state.members);
  out.members = msk.state.members;
  out.epoch = msk.state.epoch;
  return out;
}

}  // namespace

Result<RevSetupOutput> RevSetup(const std::vector<std::string>& universe,
                                Index capacity, Rng& rng, size_t max_universe) {
  CRED_RETURN_IF_ERROR(ValidateUniverse(universe, max_universe));
  const CipherElement& g = PairingContext::Default().cipher_generator;

  RevSetupOutput out;
  auto& msk = out.msk;
  msk.alpha = Scalar::Random(rng);
  msk.a = Scalar::Random(rng);
  msk.b = Scalar::Random(rng);
  msk.gamma = Scalar::Random(rng);
  CRED_ASSIGN_OR_RETURN(AccInitOutput acc, AccInit(capacity, msk.gamma));
  msk.state = acc.state;
  msk.next_index = 1;

  auto& mpk = out.mpk;
  mpk.g = g;
  mpk.g_b = g.Pow(msk.b);
  for (const auto& x : universe) {
    const Scalar z = Scalar::Random(rng);
    msk.z.emplace(x, z);
    mpk.h.emplace(x, g.Pow(z));
  }
  mpk.params = std::move(acc.params);
  mpk.universe = universe;
  mpk = Republish(mpk, msk);
  return out;
}

TargetElement ComputeBlind(const RevMasterSecretKey& msk, Index capacity,
                           const IndexSet& members) {
  const Scalar acc_log = AccumulatorExponent(capacity, members, msk.gamma);
  return GeneratorPairing().Pow(msk.alpha * acc_log +
                                msk.b * msk.gamma.Pow(capacity + 1));
}

Result<RevKeyGenOutput> RevKeyGen(const RevMasterPublicKey& mpk,
                                  RevMasterSecretKey& msk,
                                  const AttributeSet& attrs, Rng& rng) {
  for (const auto& x : attrs) {
    if (mpk.h.count(x) == 0 || msk.z.count(x) == 0) {
      return MakeError(ErrorCode::kUnknownAttribute, x);
    }
  }
  if (msk.next_index > mpk.params.capacity) {
    return MakeError(ErrorCode::kCapacityExceeded,
                     "all " + std::to_string(mpk.params.capacity) +
                         " indices have been issued");
  }
  const Index i = msk.next_index;
  CRED_ASSIGN_OR_RETURN(
      AccumulatorState next,
      AccUpdate(mpk.params, msk.state, i, std::nullopt, msk.gamma));
  msk.state = std::move(next);
  msk.next_index = i + 1;

  RevKeyGenOutput out;
  out.mpk = Republish(mpk, msk);

  const KeyElement& g = PairingContext::Default().key_generator;
  const Scalar t = Scalar::Random(rng);
  const Scalar bt = msk.b * t;
  RevSecretKey& key = out.key;
  key.index = i;
  key.k = g.Pow(msk.alpha + msk.a * bt + msk.b * msk.gamma.Pow(i));
  key.l = g.Pow(bt);
  for (const auto& x : attrs) key.k_x.emplace(x, g.Pow(msk.z.at(x) * t));
  key.attrs = attrs;
  key.epoch = out.mpk.epoch;
  CRED_ASSIGN_OR_RETURN(
      key.witness,
      ComputeWitness(out.mpk.params, out.mpk.members, i, out.mpk.epoch));
  return out;
}

Result<RevMasterPublicKey> RevKeyRemove(const RevMasterPublicKey& mpk,
                                        RevMasterSecretKey& msk, Index i) {
  CRED_ASSIGN_OR_RETURN(
      AccumulatorState next,
      AccUpdate(mpk.params, msk.state, std::nullopt, i, msk.gamma));
  msk.state = std::move(next);
  return Republish(mpk, msk);
}

Result<RevSecretKey> RevUpdateKey(const RevSecretKey& key,
                                  const RevMasterPublicKey& old_mpk,
                                  const RevMasterPublicKey& new_mpk) {
  if (key.epoch != old_mpk.epoch || key.witness.epoch != old_mpk.epoch) {
    return MakeError(ErrorCode::kEpochMismatch,
                     "key is at epoch " + std::to_string(key.epoch) +
                         ", old MPK is epoch " + std::to_string(old_mpk.epoch));
  }
  CRED_ASSIGN_OR_RETURN(Witness w,
                        UpdateWitness(new_mpk.params, key.witness,
                                      old_mpk.members, new_mpk.members,
                                      new_mpk.epoch));
  RevSecretKey out = key;
  out.witness = std::move(w);
  out.epoch = new_mpk.epoch;
  return out;
}

Result<RevSecretKey> RevApplyDelta(const RevSecretKey& key,
                                   const AccParams& params,
                                   const EpochDelta& delta) {
  CRED_ASSIGN_OR_RETURN(Witness w, ApplyDelta(params, key.witness, delta));
  RevSecretKey out = key;
  out.witness = std::move(w);
  out.epoch = delta.to;
  return out;
}

Result<Encapsulation<RevCiphertext>> RevEncrypt(
    const RevMasterPublicKey& mpk, const AccessMatrix& am,
    std::optional<ByteView> seed, Rng& rng) {
  CRED_RETURN_IF_ERROR(ValidateAccessMatrix(am));
  for (const auto& x : am.rho) {
    if (mpk.h.count(x) == 0) return MakeError(ErrorCode::kUnknownAttribute, x);
  }
  if (mpk.acc.IsIdentity()) {
    return MakeError(ErrorCode::kEmptyAccumulator,
                     "no key is currently valid");
  }
  const std::vector<Scalar> v = DrawShareVector(am.columns, seed, rng);
  const Scalar& s = v[0];
  const std::vector<Scalar> lambda = ComputeShares(am, v);

  Encapsulation<RevCiphertext> out;
  RevCiphertext& ct = out.ciphertext;
  ct.c_prime = mpk.g_b.Pow(s);
  ct.c_rows.reserve(am.rows.size());
  for (size_t k = 0; k < am.rows.size(); ++k) {
    ct.c_rows.push_back(mpk.acc_a.Pow(lambda[k]) * mpk.h.at(am.rho[k]).Pow(-s));
  }
  ct.c_dprime = mpk.acc.Pow(s);
  ct.am = am;
  ct.epoch = mpk.epoch;
  out.secret = mpk.blind.Pow(s);
  return out;
}

Result<TargetElement> RevDecrypt(const RevSecretKey& key,
                                 const RevCiphertext& ct) {
  if (key.epoch != ct.epoch || key.witness.epoch != ct.epoch) {
    return MakeError(ErrorCode::kEpochMismatch,
                     "key is at epoch " + std::to_string(key.epoch) +
                         ", ciphertext at " + std::to_string(ct.epoch));
  }
  if (ct.c_rows.size() != ct.am.rows.size()) {
    return MakeError(ErrorCode::kInvalidArgument, "ciphertext shape mismatch");
  }
  const auto omega = SolveReconstruction(ct.am, key.attrs);
  if (!omega) return MakeError(ErrorCode::kNotSatisfied);

  PairingProduct prod;
  prod.Add(ct.c_dprime, key.k);
  for (const auto& [k, w] : *omega) {
    const auto kx = key.k_x.find(ct.am.rho[k]);
    if (kx == key.k_x.end()) return MakeError(ErrorCode::kNotSatisfied);
    prod.Add(ct.c_rows[k].Pow(-w), key.l);
    prod.Add(ct.c_prime.Pow(-w), kx->second);
  }
  prod.Add(ct.c_prime.Inverse(), key.witness.value);
  return prod.Finish();
}

}  // namespace cred
