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

#include <cstdint>
#include <string>
#include <string_view>

#include "cred/status.h"

namespace cred {

// Big-endian writer. Variable-size data goes out as u32 length + bytes.
class ByteWriter {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U32(uint32_t v);
  void U64(uint64_t v);
  void Raw(ByteView data) { out_.insert(out_.end(), data.begin(), data.end()); }
  void Field(ByteView data);
  void Field(std::string_view s) {
    Field(ByteView(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
  }

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked reader with a sticky error: after the first failure every
// read returns a default value and ok() stays false.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  uint8_t U8();
  uint32_t U32();
  uint64_t U64();
  ByteView Raw(size_t n);
  ByteView Field();
  // Field whose length must be exactly n.
  ByteView FixedField(size_t n);
  std::string String();

  // Records a decode failure detected by the caller.
  void Fail(std::string message);

  bool ok() const { return ok_; }
  bool at_end() const { return pos_ == data_.size(); }
  size_t remaining() const { return data_.size() - pos_; }
  const std::string& failure() const { return failure_; }

  // Error unless every byte has been consumed without failure.
  Status Finish() const;

 private:
  bool Need(size_t n);

  ByteView data_;
  size_t pos_ = 0;
  bool ok_ = true;
  std::string failure_;
};

}  // namespace cred
