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

// The attribute-based KEM bound to an accumulator of issued key indices.
//
//   MPK:     g, g^b, h_x, acc_V, acc_V^a,
//            blind = e(acc_V, g)^alpha * e(g^b, g^{gamma^{n+1}}),
//            g_k^{gamma^j} for j != n+1
//   KeyGen:  K_i = g^{alpha + abt + b gamma^i}, L = g^{bt}, K_x = g^{z_x t}, wit_i
//   Encrypt: C' = g^{bs}, C_k = acc_V^{a lambda_k} h_{rho(k)}^{-s}, C'' = acc_V^s
//            secret = blind^s
//   Decrypt: e(C'', K_i) / (prod_k [e(C_k, L) e(C', K_rho)]^{omega_k} e(C', wit_i))
//
// Every issuance or removal republishes acc_V, acc_V^a and blind under a new
// epoch. Keys and ciphertexts carry the epoch they belong to; decryption
// refuses to mix epochs.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cred/accumulator.h"
#include "cred/algebra.h"
#include "cred/kem.h"
#include "cred/lsss.h"
#include "cred/rng.h"
#include "cred/status.h"

namespace cred {

struct RevMasterPublicKey {
  CipherElement g;
  CipherElement g_b;
  std::map<std::string, CipherElement> h;
  CipherElement acc;
  CipherElement acc_a;
  TargetElement blind;
  AccParams params;
  IndexSet members;
  uint64_t epoch = 0;
  std::vector<std::string> universe;
  std::string suite{kSuiteId};

  bool operator==(const RevMasterPublicKey&) const = default;
};

struct RevMasterSecretKey {
  Scalar alpha;
  Scalar a;
  Scalar b;
  Scalar gamma;
  std::map<std::string, Scalar> z;
  Index next_index = 1;
  AccumulatorState state;

  bool operator==(const RevMasterSecretKey&) const = default;
};

struct RevSecretKey {
  Index index = 0;
  KeyElement k;
  KeyElement l;
  std::map<std::string, KeyElement> k_x;
  Witness witness;
  AttributeSet attrs;
  uint64_t epoch = 0;

  bool operator==(const RevSecretKey&) const = default;
};

struct RevCiphertext {
  CipherElement c_prime;
  std::vector<CipherElement> c_rows;
  CipherElement c_dprime;
  AccessMatrix am;
  uint64_t epoch = 0;

  bool operator==(const RevCiphertext&) const = default;
};

struct RevSetupOutput {
  RevMasterPublicKey mpk;
  RevMasterSecretKey msk;
};

struct RevKeyGenOutput {
  RevSecretKey key;
  RevMasterPublicKey mpk;
};

Result<RevSetupOutput> RevSetup(const std::vector<std::string>& universe,
                                Index capacity, Rng& rng,
                                size_t max_universe = kDefaultMaxUniverse);

// Blind term recomputed from the authority's scalars:
// e(g_c, g_k)^{alpha * log(acc_V) + b * gamma^{n+1}}.
TargetElement ComputeBlind(const RevMasterSecretKey& msk, Index capacity,
                           const IndexSet& members);

// Issues the next index. Updates msk (index counter, accumulator state) and
// returns the key together with the republished MPK.
Result<RevKeyGenOutput> RevKeyGen(const RevMasterPublicKey& mpk,
                                  RevMasterSecretKey& msk,
                                  const AttributeSet& attrs, Rng& rng);

Result<RevMasterPublicKey> RevKeyRemove(const RevMasterPublicKey& mpk,
                                        RevMasterSecretKey& msk, Index i);

// Moves a key from old_mpk's epoch to new_mpk's epoch. Works in either
// direction, so a key can also be brought back to an older snapshot.
Result<RevSecretKey> RevUpdateKey(const RevSecretKey& key,
                                  const RevMasterPublicKey& old_mpk,
                                  const RevMasterPublicKey& new_mpk);

Result<RevSecretKey> RevApplyDelta(const RevSecretKey& key,
                                   const AccParams& params,
                                   const EpochDelta& delta);

Result<Encapsulation<RevCiphertext>> RevEncrypt(
    const RevMasterPublicKey& mpk, const AccessMatrix& am,
    std::optional<ByteView> seed, Rng& rng);

Result<TargetElement> RevDecrypt(const RevSecretKey& key,
                                 const RevCiphertext& ct);

}  // namespace cred
