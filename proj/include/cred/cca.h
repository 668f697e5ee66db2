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

// Chosen-ciphertext hardening of the KEM with a prover-chosen nonce.
//
// The verifier encapsulates under randomness derived from
// H'(r_c || K_c || policy) and masks K_c || r_c with PRG(H(secret), 512).
// The prover decrypts, checks that r_c is the nonce it sent, and re-runs the
// whole encryption to make sure the bundle is exactly what an honest
// verifier would have produced from these inputs.

#include <array>
#include <cstdint>
#include <string>
#include <variant>

#include "cred/kem.h"
#include "cred/lsss.h"
#include "cred/revocable_kem.h"
#include "cred/status.h"

namespace cred {

inline constexpr size_t kNonceSize = 32;
inline constexpr size_t kTokenSize = 32;
inline constexpr size_t kPadSize = kTokenSize + kNonceSize;  // 512-bit pad

using SessionNonce = std::array<uint8_t, kNonceSize>;
using Token = std::array<uint8_t, kTokenSize>;

enum class KemMode : uint8_t { kBase = 1, kRevocable = 2 };

struct ChallengeBundle {
  std::variant<BaseCiphertext, RevCiphertext> abkem;
  // PRG(H(secret), 512) xor (K_c || r_c).
  std::array<uint8_t, kPadSize> c{};
  // Canonical policy text.
  std::string policy;
  uint64_t epoch = 0;
  std::string suite{kSuiteId};

  KemMode mode() const {
    return std::holds_alternative<BaseCiphertext>(abkem) ? KemMode::kBase
                                                         : KemMode::kRevocable;
  }
  bool operator==(const ChallengeBundle&) const = default;
};

// H'(r_c || K_c || canonical policy).
std::array<uint8_t, 32> ChallengeSeed(const SessionNonce& r_c, const Token& k_c,
                                      std::string_view canonical_policy);

// PRG(H(encode(secret)), 512).
std::array<uint8_t, kPadSize> SecretPad(const TargetElement& secret);

Result<ChallengeBundle> CcaEncrypt(const BaseMpk& mpk, const Policy& policy,
                                   const SessionNonce& r_c, const Token& k_c);
Result<ChallengeBundle> CcaEncrypt(const RevMasterPublicKey& mpk,
                                   const Policy& policy,
                                   const SessionNonce& r_c, const Token& k_c);

// Errors: kNotSatisfied, kNonceMismatch, kReencryptMismatch, kEpochMismatch,
// kSuiteMismatch, kMalformedEnvelope (unparseable policy), kInvalidArgument
// (mode does not match the key).
Result<Token> CcaDecrypt(const BaseKey& key, const ChallengeBundle& bundle,
                         const SessionNonce& r_c, const BaseMpk& mpk);
Result<Token> CcaDecrypt(const RevSecretKey& key, const ChallengeBundle& bundle,
                         const SessionNonce& r_c,
                         const RevMasterPublicKey& mpk);

}  // namespace cred
