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

// Ciphertext-policy attribute-based KEM, small-universe construction.
//
//   Setup:   alpha, a, z_x <- Z_p.  MPK = (g, g^a, h_x = g^{z_x}, e(g,g)^alpha)
//   KeyGen:  t <- Z_p.  K = g^{alpha + a t}, L = g^t, K_x = g^{z_x t}
//   Encrypt: v = (s, y_2, .., y_m), lambda_k = <v, M_k>
//            C' = g^s, C_k = g^{a lambda_k} h_{rho(k)}^{-s}, secret e(g,g)^{alpha s}
//   Decrypt: e(C', K) / prod_k [e(C_k, L) e(C', K_{rho(k)})]^{omega_k}
//
// h_x is published on the cipher side; the authority keeps z_x so it can
// build K_x on the key side.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cred/algebra.h"
#include "cred/lsss.h"
#include "cred/rng.h"
#include "cred/status.h"

namespace cred {

inline constexpr size_t kDefaultMaxUniverse = 64;

struct BaseMpk {
  CipherElement g;
  CipherElement g_a;
  std::map<std::string, CipherElement> h;
  TargetElement egg_alpha;
  std::vector<std::string> universe;
  std::string suite{kSuiteId};

  bool operator==(const BaseMpk&) const = default;
};

struct BaseMsk {
  Scalar alpha;
  Scalar a;
  std::map<std::string, Scalar> z;

  bool operator==(const BaseMsk&) const = default;
};

struct BaseKey {
  KeyElement k;
  KeyElement l;
  std::map<std::string, KeyElement> k_x;
  AttributeSet attrs;

  bool operator==(const BaseKey&) const = default;
};

struct BaseCiphertext {
  CipherElement c_prime;
  std::vector<CipherElement> c_rows;
  AccessMatrix am;

  bool operator==(const BaseCiphertext&) const = default;
};

template <typename Ciphertext>
struct Encapsulation {
  TargetElement secret;
  Ciphertext ciphertext;
};

struct BaseSetupOutput {
  BaseMpk mpk;
  BaseMsk msk;
};

// Checks names, uniqueness and size of an attribute universe.
Status ValidateUniverse(const std::vector<std::string>& universe,
                        size_t max_universe);

// Encryption randomness v = (s, y_2, .., y_m), always drawn in that order:
// from DeriveScalars(seed, m) when a seed is given, else from `rng`.
std::vector<Scalar> DrawShareVector(size_t m, std::optional<ByteView> seed,
                                    Rng& rng);

// lambda_k = <v, M_k> for every row.
std::vector<Scalar> ComputeShares(const AccessMatrix& am,
                                  const std::vector<Scalar>& v);

Result<BaseSetupOutput> BaseSetup(const std::vector<std::string>& universe,
                                  Rng& rng,
                                  size_t max_universe = kDefaultMaxUniverse);

Result<BaseKey> BaseKeyGen(const BaseMpk& mpk, const BaseMsk& msk,
                           const AttributeSet& attrs, Rng& rng);

// With a seed the whole output is a pure function of (mpk, am, seed).
Result<Encapsulation<BaseCiphertext>> BaseEncrypt(
    const BaseMpk& mpk, const AccessMatrix& am, std::optional<ByteView> seed,
    Rng& rng);

// Fails with kNotSatisfied when the key's attributes do not satisfy am.
Result<TargetElement> BaseDecrypt(const BaseKey& key, const BaseCiphertext& ct);

}  // namespace cred
