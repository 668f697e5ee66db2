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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cred {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

enum class ErrorCode {
  kSyntax,
  kDuplicateAttribute,
  kUnknownAttribute,
  kUniverseTooLarge,
  kNotSatisfied,
  kCapacityExceeded,
  kIndexInUse,
  kIndexNotPresent,
  kNotMember,
  kRevoked,
  kEpochMismatch,
  kEmptyAccumulator,
  kNonceMismatch,
  kReencryptMismatch,
  kMalformedEnvelope,
  kUnknownTag,
  kSuiteMismatch,
  kInvalidArgument,
  kIo,
  kProtocol,
};

std::string_view ErrorCodeName(ErrorCode code);

struct Error {
  ErrorCode code;
  std::string message;
  // Byte offset into the input, for syntax errors.
  size_t offset = 0;

  std::string ToString() const;
};

inline Error MakeError(ErrorCode code, std::string message = {}) {
  return Error{code, std::move(message), 0};
}

// Value-or-error. Accessing value() on an error is a programming bug.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : rep_(std::move(value)) {}  // NOLINT
  Result(Error error) : rep_(std::move(error)) {}  // NOLINT

  bool ok() const { return rep_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<0>(rep_); }
  T& value() & { return std::get<0>(rep_); }
  T&& value() && { return std::get<0>(std::move(rep_)); }
  const Error& error() const { return std::get<1>(rep_); }
  ErrorCode code() const { return error().code; }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

 private:
  std::variant<T, Error> rep_;
};

template <>
class [[nodiscard]] Result<void> {
 public:
  Result() = default;
  Result(Error error) : error_(std::move(error)), ok_(false) {}  // NOLINT

  bool ok() const { return ok_; }
  explicit operator bool() const { return ok_; }
  const Error& error() const { return error_; }
  ErrorCode code() const { return error_.code; }

 private:
  Error error_{ErrorCode::kInvalidArgument, {}, 0};
  bool ok_ = true;
};

using Status = Result<void>;

inline Status OkStatus() { return Status(); }

}  // namespace cred

#define CRED_RETURN_IF_ERROR(expr)        \
  do {                                    \
    auto _cred_status = (expr);           \
    if (!_cred_status.ok()) {             \
      return _cred_status.error();        \
    }                                     \
  } while (false)

#define CRED_CONCAT_INNER(a, b) a##b
#define CRED_CONCAT(a, b) CRED_CONCAT_INNER(a, b)

#define CRED_ASSIGN_OR_RETURN(lhs, expr) \
  CRED_ASSIGN_OR_RETURN_IMPL(CRED_CONCAT(_cred_result_, __LINE__), lhs, expr)

#define CRED_ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                               \
  if (!tmp.ok()) {                                 \
    return tmp.error();                            \
  }                                                \
  lhs = std::move(tmp).value()
