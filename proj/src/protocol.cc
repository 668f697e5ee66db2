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

#include "cred/protocol.h"

#include <openssl/crypto.h>

#include <algorithm>

#include "cred/bytes.h"
#include "cred/codec.h"

namespace cred {

namespace {

ByteView View(const auto& array) { return ByteView(array.data(), array.size()); }

template <size_t N>
bool CopyFixed(ByteView in, std::array<uint8_t, N>& out) {
  if (in.size() != N) return false;
  std::copy(in.begin(), in.end(), out.begin());
  return true;
}

struct PayloadWriter {
  ByteWriter w;
  void operator()(const ResourceRequest& m) {
    w.Field(m.resource_id);
    w.Field(View(m.r_c));
  }
  void operator()(const Challenge& m) { w.Field(Encode(m.bundle)); }
  void operator()(const Response& m) {
    w.Field(m.resource_id);
    w.Field(View(m.token));
  }
  void operator()(const Decision& m) {
    const uint8_t granted = m.granted ? 1 : 0;
    w.Field(ByteView(&granted, 1));
    w.Field(m.reason);
  }
};

Error Malformed(std::string message) {
  return MakeError(ErrorCode::kProtocol, std::move(message));
}

// Reads the next field and rejects it when empty.
Result<ByteView> NextField(ByteReader& r) {
  ByteView f = r.Field();
  if (!r.ok()) return Malformed("truncated frame: " + r.failure());
  if (f.empty()) return Malformed("empty message field");
  return f;
}

std::string AsString(ByteView v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size());
}

template <typename Mpk>
Result<VerifierStart> StartVerifier(const ResourceRequest& request,
                                    const Policy& policy, const Mpk& mpk,
                                    const Token& k_c) {
  if (request.resource_id.empty()) {
    return MakeError(ErrorCode::kInvalidArgument, "empty resource id");
  }
  CRED_ASSIGN_OR_RETURN(ChallengeBundle bundle,
                        CcaEncrypt(mpk, policy, request.r_c, k_c));
  VerifierStart out;
  out.session.resource_id = request.resource_id;
  out.session.policy = bundle.policy;
  out.session.k_c = k_c;
  out.session.state = VerifierState::kChallenged;
  out.challenge.bundle = std::move(bundle);
  return out;
}

Token FreshToken(Rng& rng) {
  Token t;
  rng.Fill(t);
  return t;
}

template <typename Key, typename Mpk>
Result<Response> Respond(ProverSession& session, const Challenge& challenge,
                         const Key& key, const Mpk& mpk) {
  if (session.state != ProverState::kStarted) {
    return MakeError(ErrorCode::kProtocol, "session not awaiting a challenge");
  }
  // Any rejection ends the session; a prover never answers twice.
  session.state = ProverState::kClosed;
  CRED_ASSIGN_OR_RETURN(Token token,
                        CcaDecrypt(key, challenge.bundle, session.r_c, mpk));
  session.state = ProverState::kResponded;
  return Response{session.resource_id, token};
}

}  // namespace

Bytes EncodeFrame(const Message& message) {
  PayloadWriter pw;
  std::visit(pw, message);
  const Bytes& payload = pw.w.bytes();
  ByteWriter frame;
  frame.U32(static_cast<uint32_t>(payload.size()));
  frame.U8(static_cast<uint8_t>(message.index() + 1));
  frame.Raw(payload);
  return frame.Take();
}

Result<FrameHeader> ParseFrameHeader(ByteView header) {
  if (header.size() != kFrameHeaderSize) {
    return Malformed("frame header must be 5 bytes");
  }
  ByteReader r(header);
  const uint32_t size = r.U32();
  const uint8_t tag = r.U8();
  if (tag < 1 || tag > 4) {
    return MakeError(ErrorCode::kUnknownTag,
                     "message tag " + std::to_string(tag));
  }
  if (size > kMaxFramePayload) return Malformed("frame too large");
  return FrameHeader{static_cast<MessageTag>(tag), size};
}

Result<Message> DecodeFrame(ByteView frame) {
  if (frame.size() < kFrameHeaderSize) return Malformed("truncated frame");
  CRED_ASSIGN_OR_RETURN(FrameHeader header,
                        ParseFrameHeader(frame.first(kFrameHeaderSize)));
  ByteView payload = frame.subspan(kFrameHeaderSize);
  if (payload.size() != header.payload_size) {
    return Malformed("frame length disagrees with payload");
  }
  ByteReader r(payload);
  Message out;
  switch (header.tag) {
    case MessageTag::kRequest: {
      ResourceRequest m;
      CRED_ASSIGN_OR_RETURN(ByteView id, NextField(r));
      CRED_ASSIGN_OR_RETURN(ByteView nonce, NextField(r));
      m.resource_id = AsString(id);
      if (!CopyFixed(nonce, m.r_c)) return Malformed("nonce must be 32 bytes");
      out = std::move(m);
      break;
    }
    case MessageTag::kChallenge: {
      CRED_ASSIGN_OR_RETURN(ByteView env, NextField(r));
      CRED_ASSIGN_OR_RETURN(ChallengeBundle bundle, Decode<ChallengeBundle>(env));
      out = Challenge{std::move(bundle)};
      break;
    }
    case MessageTag::kResponse: {
      Response m;
      CRED_ASSIGN_OR_RETURN(ByteView id, NextField(r));
      CRED_ASSIGN_OR_RETURN(ByteView token, NextField(r));
      m.resource_id = AsString(id);
      if (!CopyFixed(token, m.token)) return Malformed("token must be 32 bytes");
      out = std::move(m);
      break;
    }
    case MessageTag::kDecision: {
      Decision m;
      CRED_ASSIGN_OR_RETURN(ByteView granted, NextField(r));
      CRED_ASSIGN_OR_RETURN(ByteView reason, NextField(r));
      if (granted.size() != 1 || granted[0] > 1) {
        return Malformed("bad decision flag");
      }
      m.granted = granted[0] == 1;
      m.reason = AsString(reason);
      out = std::move(m);
      break;
    }
  }
  if (!r.at_end()) return Malformed("trailing bytes in frame");
  return out;
}

ProverStart ProverBegin(std::string resource_id, Rng& rng) {
  SessionNonce r_c;
  rng.Fill(r_c);
  return ProverBegin(std::move(resource_id), r_c);
}

ProverStart ProverBegin(std::string resource_id, const SessionNonce& r_c) {
  ProverStart out;
  out.session.resource_id = resource_id;
  out.session.r_c = r_c;
  out.session.state = ProverState::kStarted;
  out.request.resource_id = std::move(resource_id);
  out.request.r_c = r_c;
  return out;
}

Result<VerifierStart> VerifierOnRequest(const ResourceRequest& request,
                                        const Policy& policy,
                                        const RevMasterPublicKey& mpk,
                                        Rng& rng) {
  return StartVerifier(request, policy, mpk, FreshToken(rng));
}

Result<VerifierStart> VerifierOnRequest(const ResourceRequest& request,
                                        const Policy& policy,
                                        const BaseMpk& mpk, Rng& rng) {
  return StartVerifier(request, policy, mpk, FreshToken(rng));
}

Result<VerifierStart> VerifierOnRequest(const ResourceRequest& request,
                                        const Policy& policy,
                                        const RevMasterPublicKey& mpk,
                                        const Token& k_c) {
  return StartVerifier(request, policy, mpk, k_c);
}

Result<VerifierStart> VerifierOnRequest(const ResourceRequest& request,
                                        const Policy& policy,
                                        const BaseMpk& mpk, const Token& k_c) {
  return StartVerifier(request, policy, mpk, k_c);
}

Result<Response> ProverOnChallenge(ProverSession& session,
                                   const Challenge& challenge,
                                   const RevSecretKey& key,
                                   const RevMasterPublicKey& mpk) {
  return Respond(session, challenge, key, mpk);
}

Result<Response> ProverOnChallenge(ProverSession& session,
                                   const Challenge& challenge,
                                   const BaseKey& key, const BaseMpk& mpk) {
  return Respond(session, challenge, key, mpk);
}

Decision VerifierOnResponse(VerifierSession& session, const Response& response) {
  if (session.state != VerifierState::kChallenged) {
    return Decision{false, "session closed"};
  }
  session.state = VerifierState::kClosed;
  const bool token_ok =
      CRYPTO_memcmp(response.token.data(), session.k_c.data(), kTokenSize) == 0;
  if (response.resource_id != session.resource_id) {
    return Decision{false, "resource mismatch"};
  }
  if (!token_ok) return Decision{false, "token mismatch"};
  return Decision{true, "granted"};
}

}  // namespace cred
