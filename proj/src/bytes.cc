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

#include "cred/bytes.h"

#include <limits>
#include <stdexcept>

namespace cred {

void ByteWriter::U32(uint32_t v) {
  for (int i = 3; i >= 0; --i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::U64(uint64_t v) {
  for (int i = 7; i >= 0; --i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::Field(ByteView data) {
  if (data.size() > std::numeric_limits<uint32_t>::max()) {
    throw std::length_error("field too large");
  }
  U32(static_cast<uint32_t>(data.size()));
  Raw(data);
}

bool ByteReader::Need(size_t n) {
  if (!ok_) return false;
  if (data_.size() - pos_ < n) {
    Fail("truncated input");
    return false;
  }
  return true;
}

void ByteReader::Fail(std::string message) {
  if (ok_) {
    ok_ = false;
    failure_ = std::move(message);
  }
}

uint8_t ByteReader::U8() {
  if (!Need(1)) return 0;
  return data_[pos_++];
}

uint32_t ByteReader::U32() {
  if (!Need(4)) return 0;
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

uint64_t ByteReader::U64() {
  if (!Need(8)) return 0;
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

ByteView ByteReader::Raw(size_t n) {
  if (!Need(n)) return {};
  ByteView out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

ByteView ByteReader::Field() {
  const uint32_t n = U32();
  return Raw(n);
}

ByteView ByteReader::FixedField(size_t n) {
  ByteView f = Field();
  if (ok_ && f.size() != n) {
    Fail("field has length " + std::to_string(f.size()) + ", expected " +
         std::to_string(n));
    return {};
  }
  return f;
}

std::string ByteReader::String() {
  ByteView f = Field();
  return std::string(f.begin(), f.end());
}

Status ByteReader::Finish() const {
  if (!ok_) return MakeError(ErrorCode::kMalformedEnvelope, failure_);
  if (pos_ != data_.size()) {
    return MakeError(ErrorCode::kMalformedEnvelope, "trailing bytes");
  }
  return OkStatus();
}

}  // namespace cred
