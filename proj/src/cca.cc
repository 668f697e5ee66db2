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

#include "cred/cca.h"

#include <openssl/crypto.h>

#include <algorithm>
#include <stdexcept>

#include "cred/codec.h"

namespace cred {

namespace {

// Seeded encryption never consumes randomness; reaching Fill() is a bug.
class NoRng final : public Rng {
 public:
  void Fill(std::span<uint8_t>) override {
    throw std::logic_error("seeded encryption drew from an rng");
  }
};

// Mode-specific hooks for the shared encrypt/decrypt flow.
struct BaseOps {
  using Mpk = BaseMpk;
  using Key = BaseKey;
  using Ciphertext = BaseCiphertext;

  static Result<Encapsulation<Ciphertext>> Encrypt(const Mpk& mpk,
                                                   const AccessMatrix& am,
                                                   ByteView seed) {
    NoRng unused;
    return BaseEncrypt(mpk, am, seed, unused);
  }
  static Result<TargetElement> Decrypt(const Key& key, const Ciphertext& ct) {
    return BaseDecrypt(key, ct);
  }
  static uint64_t Epoch(const Mpk&) { return 0; }
  static Status CheckEpochs(const Key&, const ChallengeBundle&, const Mpk&) {
    return OkStatus();
  }
};

struct RevOps {
  using Mpk = RevMasterPublicKey;
  using Key = RevSecretKey;
  using Ciphertext = RevCiphertext;

  static Result<Encapsulation<Ciphertext>> Encrypt(const Mpk& mpk,
                                                   const AccessMatrix& am,
                                                   ByteView seed) {
    NoRng unused;
    return RevEncrypt(mpk, am, seed, unused);
  }
  static Result<TargetElement> Decrypt(const Key& key, const Ciphertext& ct) {
    return RevDecrypt(key, ct);
  }
  static uint64_t Epoch(const Mpk& mpk) { return mpk.epoch; }
  static Status CheckEpochs(const Key& key, const ChallengeBundle& bundle,
                            const Mpk& mpk) {
    if (key.epoch != bundle.epoch || mpk.epoch != bundle.epoch) {
      return MakeError(ErrorCode::kEpochMismatch,
                       "key epoch " + std::to_string(key.epoch) +
                           ", MPK epoch " + std::to_string(mpk.epoch) +
                           ", bundle epoch " + std::to_string(bundle.epoch));
    }
    return OkStatus();
  }
};

template <typename Ops>
Result<ChallengeBundle> Encapsulate(const typename Ops::Mpk& mpk,
                                    const Policy& policy,
                                    const SessionNonce& r_c, const Token& k_c) {
  CRED_ASSIGN_OR_RETURN(AccessMatrix am, CompilePolicy(policy));
  std::string canonical = CanonicalPolicy(policy);
  const auto seed = ChallengeSeed(r_c, k_c, canonical);
  CRED_ASSIGN_OR_RETURN(auto encap, Ops::Encrypt(mpk, am, seed));

  ChallengeBundle bundle;
  const auto pad = SecretPad(encap.secret);
  for (size_t i = 0; i < kTokenSize; ++i) bundle.c[i] = pad[i] ^ k_c[i];
  for (size_t i = 0; i < kNonceSize; ++i) {
    bundle.c[kTokenSize + i] = pad[kTokenSize + i] ^ r_c[i];
  }
  bundle.abkem = std::move(encap.ciphertext);
  bundle.policy = std::move(canonical);
  bundle.epoch = Ops::Epoch(mpk);
  bundle.suite = mpk.suite;
  return bundle;
}

template <typename Ops>
Result<Token> Decapsulate(const typename Ops::Key& key,
                          const ChallengeBundle& bundle,
                          const SessionNonce& r_c,
                          const typename Ops::Mpk& mpk) {
  if (bundle.suite != kSuiteId || mpk.suite != kSuiteId) {
    return MakeError(ErrorCode::kSuiteMismatch, bundle.suite);
  }
  const auto* ct = std::get_if<typename Ops::Ciphertext>(&bundle.abkem);
  if (ct == nullptr) {
    return MakeError(ErrorCode::kInvalidArgument,
                     "bundle mode does not match the key");
  }
  CRED_RETURN_IF_ERROR(Ops::CheckEpochs(key, bundle, mpk));
  auto policy = ParsePolicy(bundle.policy);
  if (!policy.ok()) {
    return MakeError(ErrorCode::kMalformedEnvelope,
                     "bundle policy: " + policy.error().ToString());
  }

  CRED_ASSIGN_OR_RETURN(TargetElement secret, Ops::Decrypt(key, *ct));
  const auto pad = SecretPad(secret);
  Token k_c;
  SessionNonce r_c_received;
  for (size_t i = 0; i < kTokenSize; ++i) k_c[i] = pad[i] ^ bundle.c[i];
  for (size_t i = 0; i < kNonceSize; ++i) {
    r_c_received[i] = pad[kTokenSize + i] ^ bundle.c[kTokenSize + i];
  }
  if (CRYPTO_memcmp(r_c_received.data(), r_c.data(), kNonceSize) != 0) {
    return MakeError(ErrorCode::kNonceMismatch);
  }

  CRED_ASSIGN_OR_RETURN(ChallengeBundle expected,
                        Encapsulate<Ops>(mpk, *policy, r_c, k_c));
  if (Encode(expected) != Encode(bundle)) {
    return MakeError(ErrorCode::kReencryptMismatch);
  }
  return k_c;
}

}  // namespace

std::array<uint8_t, 32> ChallengeSeed(const SessionNonce& r_c, const Token& k_c,
                                      std::string_view canonical_policy) {
  Bytes input;
  input.reserve(r_c.size() + k_c.size() + canonical_policy.size());
  input.insert(input.end(), r_c.begin(), r_c.end());
  input.insert(input.end(), k_c.begin(), k_c.end());
  input.insert(input.end(), canonical_policy.begin(), canonical_policy.end());
  return SeedHash(input);
}

std::array<uint8_t, kPadSize> SecretPad(const TargetElement& secret) {
  const auto digest = KdfHash(secret.Encode());
  const Bytes pad = PrgExpand(digest, kPadSize * 8);
  std::array<uint8_t, kPadSize> out;
  std::copy(pad.begin(), pad.end(), out.begin());
  return out;
}

Result<ChallengeBundle> CcaEncrypt(const BaseMpk& mpk, const Policy& policy,
                                   const SessionNonce& r_c, const Token& k_c) {
  return Encapsulate<BaseOps>(mpk, policy, r_c, k_c);
}

Result<ChallengeBundle> CcaEncrypt(const RevMasterPublicKey& mpk,
                                   const Policy& policy,
                                   const SessionNonce& r_c, const Token& k_c) {
  return Encapsulate<RevOps>(mpk, policy, r_c, k_c);
}

Result<Token> CcaDecrypt(const BaseKey& key, const ChallengeBundle& bundle,
                         const SessionNonce& r_c, const BaseMpk& mpk) {
  return Decapsulate<BaseOps>(key, bundle, r_c, mpk);
}

Result<Token> CcaDecrypt(const RevSecretKey& key, const ChallengeBundle& bundle,
                         const SessionNonce& r_c,
                         const RevMasterPublicKey& mpk) {
  return Decapsulate<RevOps>(key, bundle, r_c, mpk);
}

}  // namespace cred
