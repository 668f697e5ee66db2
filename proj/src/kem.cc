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

#include <set>

namespace cred {

Status ValidateUniverse(const std::vector<std::string>& universe,
                        size_t max_universe) {
  if (universe.empty()) {
    return MakeError(ErrorCode::kInvalidArgument, "empty attribute universe");
  }
  if (universe.size() > max_universe) {
    return MakeError(ErrorCode::kUniverseTooLarge,
                     std::to_string(universe.size()) + " attributes, limit " +
                         std::to_string(max_universe));
  }
  std::set<std::string> seen;
  for (const auto& a : universe) {
    if (!IsValidAttributeName(a)) {
      return MakeError(ErrorCode::kInvalidArgument,
                       "bad attribute name '" + a + "'");
    }
    if (!seen.insert(a).second) {
      return MakeError(ErrorCode::kDuplicateAttribute,
                       "attribute '" + a + "' listed twice");
    }
  }
  return OkStatus();
}

std::vector<Scalar> DrawShareVector(size_t m, std::optional<ByteView> seed,
                                    Rng& rng) {
  if (seed) return DeriveScalars(*seed, m);
  std::vector<Scalar> v;
  v.reserve(m);
  for (size_t i = 0; i < m; ++i) v.push_back(Scalar::Random(rng));
  return v;
}

std::vector<Scalar> ComputeShares(const AccessMatrix& am,
                                  const std::vector<Scalar>& v) {
  std::vector<Scalar> lambda;
  lambda.reserve(am.rows.size());
  for (const auto& row : am.rows) {
    Scalar acc;
    for (size_t j = 0; j < row.size(); ++j) acc += row[j] * v[j];
    lambda.push_back(acc);
  }
  return lambda;
}

Result<BaseSetupOutput> BaseSetup(const std::vector<std::string>& universe,
                                  Rng& rng, size_t max_universe) {
  CRED_RETURN_IF_ERROR(ValidateUniverse(universe, max_universe));
  const auto& ctx = PairingContext::Default();

  BaseSetupOutput out;
  out.msk.alpha = Scalar::Random(rng);
  out.msk.a = Scalar::Random(rng);
  out.mpk.g = ctx.cipher_generator;
  out.mpk.g_a = ctx.cipher_generator.Pow(out.msk.a);
  for (const auto& x : universe) {
    const Scalar z = Scalar::Random(rng);
    out.msk.z.emplace(x, z);
    out.mpk.h.emplace(x, ctx.cipher_generator.Pow(z));
  }
  out.mpk.egg_alpha =
      Pair(ctx.cipher_generator, ctx.key_generator).Pow(out.msk.alpha);
  out.mpk.universe = universe;
  return out;
}

Result<BaseKey> BaseKeyGen(const BaseMpk& mpk, const BaseMsk& msk,
                           const AttributeSet& attrs, Rng& rng) {
  for (const auto& x : attrs) {
    if (mpk.h.count(x) == 0 || msk.z.count(x) == 0) {
      return MakeError(ErrorCode::kUnknownAttribute, x);
    }
  }
  const KeyElement& g = PairingContext::Default().key_generator;
  const Scalar t = Scalar::Random(rng);

  BaseKey key;
  key.k = g.Pow(msk.alpha + msk.a * t);
  key.l = g.Pow(t);
  for (const auto& x : attrs) key.k_x.emplace(x, g.Pow(msk.z.at(x) * t));
  key.attrs = attrs;
  return key;
}

Result<Encapsulation<BaseCiphertext>> BaseEncrypt(
    const BaseMpk& mpk, const AccessMatrix& am, std::optional<ByteView> seed,
    Rng& rng) {
  CRED_RETURN_IF_ERROR(ValidateAccessMatrix(am));
  for (const auto& x : am.rho) {
    if (mpk.h.count(x) == 0) return MakeError(ErrorCode::kUnknownAttribute, x);
  }
  const std::vector<Scalar> v = DrawShareVector(am.columns, seed, rng);
  const Scalar& s = v[0];
  const std::vector<Scalar> lambda = ComputeShares(am, v);

  Encapsulation<BaseCiphertext> out;
  out.ciphertext.c_prime = mpk.g.Pow(s);
  out.ciphertext.c_rows.reserve(am.rows.size());
  for (size_t k = 0; k < am.rows.size(); ++k) {
    out.ciphertext.c_rows.push_back(mpk.g_a.Pow(lambda[k]) *
                                    mpk.h.at(am.rho[k]).Pow(-s));
  }
  out.ciphertext.am = am;
  out.secret = mpk.egg_alpha.Pow(s);
  return out;
}

Result<TargetElement> BaseDecrypt(const BaseKey& key,
                                  const BaseCiphertext& ct) {
  if (ct.c_rows.size() != ct.am.rows.size()) {
    return MakeError(ErrorCode::kInvalidArgument, "ciphertext shape mismatch");
  }
  const auto omega = SolveReconstruction(ct.am, key.attrs);
  if (!omega) return MakeError(ErrorCode::kNotSatisfied);

  // e(C', K) * prod_k e(C_k^{-w}, L) e(C'^{-w}, K_rho): the exponent moves
  // into G1 so a single final exponentiation suffices.
  PairingProduct prod;
  prod.Add(ct.c_prime, key.k);
  for (const auto& [k, w] : *omega) {
    const auto kx = key.k_x.find(ct.am.rho[k]);
    if (kx == key.k_x.end()) return MakeError(ErrorCode::kNotSatisfied);
    prod.Add(ct.c_rows[k].Pow(-w), key.l);
    prod.Add(ct.c_prime.Pow(-w), kx->second);
  }
  return prod.Finish();
}

}  // namespace cred
