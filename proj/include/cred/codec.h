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

// Canonical binary envelopes for every persisted or transmitted artifact.
//
//   "CRD1" | u8 tag | suite (u32 len + bytes) | u64 epoch | body
//
// The epoch is the artifact's own epoch, or 0 for artifacts without one.
// Body fields follow declaration order: scalars are 32-byte big-endian,
// group elements use compressed encodings, variable-size items are u32
// length-prefixed, counts are u32, maps and sets are written in strictly
// increasing key order (decoding rejects anything else).

#include <cstdint>

#include "cred/accumulator.h"
#include "cred/cca.h"
#include "cred/kem.h"
#include "cred/protocol.h"
#include "cred/revocable_kem.h"
#include "cred/status.h"

namespace cred {

inline constexpr std::string_view kEnvelopeMagic = "CRD1";

enum class ArtifactTag : uint8_t {
  kRevMasterPublicKey = 1,
  kRevMasterSecretKey = 2,
  kRevSecretKey = 3,
  kWitness = 4,
  kRevCiphertext = 5,
  kChallengeBundle = 6,
  kEpochDelta = 7,
  kBaseMpk = 8,
  kBaseMsk = 9,
  kBaseKey = 10,
  kBaseCiphertext = 11,
  kVerifierSession = 12,
  kProverSession = 13,
};

std::string_view ArtifactName(ArtifactTag tag);

struct EnvelopeHeader {
  ArtifactTag tag;
  std::string suite;
  uint64_t epoch = 0;
};

// Reads and checks magic, tag and suite without decoding the body.
Result<EnvelopeHeader> PeekEnvelope(ByteView bytes);

Bytes Encode(const RevMasterPublicKey& v);
Bytes Encode(const RevMasterSecretKey& v);
Bytes Encode(const RevSecretKey& v);
Bytes Encode(const Witness& v);
Bytes Encode(const RevCiphertext& v);
Bytes Encode(const ChallengeBundle& v);
Bytes Encode(const EpochDelta& v);
Bytes Encode(const BaseMpk& v);
Bytes Encode(const BaseMsk& v);
Bytes Encode(const BaseKey& v);
Bytes Encode(const BaseCiphertext& v);
Bytes Encode(const VerifierSession& v);
Bytes Encode(const ProverSession& v);

template <typename T>
Result<T> Decode(ByteView bytes);

template <> Result<RevMasterPublicKey> Decode(ByteView bytes);
template <> Result<RevMasterSecretKey> Decode(ByteView bytes);
template <> Result<RevSecretKey> Decode(ByteView bytes);
template <> Result<Witness> Decode(ByteView bytes);
template <> Result<RevCiphertext> Decode(ByteView bytes);
template <> Result<ChallengeBundle> Decode(ByteView bytes);
template <> Result<EpochDelta> Decode(ByteView bytes);
template <> Result<BaseMpk> Decode(ByteView bytes);
template <> Result<BaseMsk> Decode(ByteView bytes);
template <> Result<BaseKey> Decode(ByteView bytes);
template <> Result<BaseCiphertext> Decode(ByteView bytes);
template <> Result<VerifierSession> Decode(ByteView bytes);
template <> Result<ProverSession> Decode(ByteView bytes);

}  // namespace cred
