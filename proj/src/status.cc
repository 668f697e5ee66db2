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

#include "cred/status.h"

namespace cred {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax error";
    case ErrorCode::kDuplicateAttribute: return "duplicate attribute";
    case ErrorCode::kUnknownAttribute: return "unknown attribute";
    case ErrorCode::kUniverseTooLarge: return "universe too large";
    case ErrorCode::kNotSatisfied: return "not satisfied";
    case ErrorCode::kCapacityExceeded: return "capacity exceeded";
    case ErrorCode::kIndexInUse: return "index in use";
    case ErrorCode::kIndexNotPresent: return "index not present";
    case ErrorCode::kNotMember: return "not a member";
    case ErrorCode::kRevoked: return "revoked";
    case ErrorCode::kEpochMismatch: return "epoch mismatch";
    case ErrorCode::kEmptyAccumulator: return "empty accumulator";
    case ErrorCode::kNonceMismatch: return "nonce mismatch";
    case ErrorCode::kReencryptMismatch: return "re-encryption mismatch";
    case ErrorCode::kMalformedEnvelope: return "malformed envelope";
    case ErrorCode::kUnknownTag: return "unknown tag";
    case ErrorCode::kSuiteMismatch: return "suite mismatch";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kProtocol: return "protocol error";
  }
  return "unknown error";
}

std::string Error::ToString() const {
  std::string out(ErrorCodeName(code));
  if (code == ErrorCode::kSyntax) {
    out += " at offset " + std::to_string(offset);
  }
  if (!message.empty()) {
    out += ": ";
    out += message;
  }
  return out;
}

}  // namespace cred
