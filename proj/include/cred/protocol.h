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

// Four-message resource access protocol:
//
//   prover   -> verifier  ResourceRequest{resource_id, r_c}
//   verifier -> prover    Challenge{bundle = CcaEncrypt(mpk, policy, r_c, K_c)}
//   prover   -> verifier  Response{resource_id, K_c'}
//   verifier -> prover    Decision{granted = (K_c' == K_c), reason}
//
// K_c is fresh per verifier session and a session grants at most once, so a
// recorded Response is useless against any later session. A Challenge
// replayed into another prover session fails the r_c check.
//
// Wire framing: u32 BE payload length | u8 tag | payload, where the payload
// is the message's fields in order, each as u32 BE length + bytes. The
// length counts the payload only (not the tag).

#include <cstdint>
#include <string>
#include <variant>

#include "cred/cca.h"
#include "cred/kem.h"
#include "cred/lsss.h"
#include "cred/revocable_kem.h"
#include "cred/rng.h"
#include "cred/status.h"

namespace cred {

struct ResourceRequest {
  std::string resource_id;
  SessionNonce r_c{};
  bool operator==(const ResourceRequest&) const = default;
};

struct Challenge {
  ChallengeBundle bundle;
  bool operator==(const Challenge&) const = default;
};

struct Response {
  std::string resource_id;
  Token token{};
  bool operator==(const Response&) const = default;
};

struct Decision {
  bool granted = false;
  std::string reason;
  bool operator==(const Decision&) const = default;
};

using Message = std::variant<ResourceRequest, Challenge, Response, Decision>;

enum class MessageTag : uint8_t {
  kRequest = 1,
  kChallenge = 2,
  kResponse = 3,
  kDecision = 4,
};

inline constexpr size_t kFrameHeaderSize = 5;
inline constexpr uint32_t kMaxFramePayload = 16u << 20;

struct FrameHeader {
  MessageTag tag;
  uint32_t payload_size;
};

Bytes EncodeFrame(const Message& message);
// Header of a frame; rejects unknown tags and oversized payloads.
Result<FrameHeader> ParseFrameHeader(ByteView header);
// Decodes exactly one complete frame.
Result<Message> DecodeFrame(ByteView frame);

enum class VerifierState : uint8_t { kAwaitingRequest = 0, kChallenged = 1, kClosed = 2 };
enum class ProverState : uint8_t { kStarted = 0, kResponded = 1, kClosed = 2 };

struct VerifierSession {
  std::string resource_id;
  std::string policy;  // canonical
  Token k_c{};
  VerifierState state = VerifierState::kAwaitingRequest;
  bool operator==(const VerifierSession&) const = default;
};

struct ProverSession {
  std::string resource_id;
  SessionNonce r_c{};
  ProverState state = ProverState::kStarted;
  bool operator==(const ProverSession&) const = default;
};

struct ProverStart {
  ProverSession session;
  ResourceRequest request;
};

struct VerifierStart {
  VerifierSession session;
  Challenge challenge;
};

ProverStart ProverBegin(std::string resource_id, Rng& rng);
// Deterministic variant for reproducible transcripts.
ProverStart ProverBegin(std::string resource_id, const SessionNonce& r_c);

Result<VerifierStart> VerifierOnRequest(const ResourceRequest& request,
                                        const Policy& policy,
                                        const RevMasterPublicKey& mpk, Rng& rng);
Result<VerifierStart> VerifierOnRequest(const ResourceRequest& request,
                                        const Policy& policy,
                                        const BaseMpk& mpk, Rng& rng);
// Same with a caller-chosen token.
Result<VerifierStart> VerifierOnRequest(const ResourceRequest& request,
                                        const Policy& policy,
                                        const RevMasterPublicKey& mpk,
                                        const Token& k_c);
Result<VerifierStart> VerifierOnRequest(const ResourceRequest& request,
                                        const Policy& policy,
                                        const BaseMpk& mpk, const Token& k_c);

// Any CCA rejection aborts the session; no Response is produced.
Result<Response> ProverOnChallenge(ProverSession& session,
                                   const Challenge& challenge,
                                   const RevSecretKey& key,
                                   const RevMasterPublicKey& mpk);
Result<Response> ProverOnChallenge(ProverSession& session,
                                   const Challenge& challenge,
                                   const BaseKey& key, const BaseMpk& mpk);

// Grants iff the session is awaiting a response, the resource matches and the
// token equals K_c. Always closes the session.
Decision VerifierOnResponse(VerifierSession& session, const Response& response);

}  // namespace cred
