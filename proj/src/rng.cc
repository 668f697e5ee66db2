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

#include "cred/rng.h"

#include <openssl/rand.h>

#include <algorithm>
#include <stdexcept>

#include "cred/algebra.h"

namespace cred {

void SystemRng::Fill(std::span<uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
}

DeterministicRng::DeterministicRng(ByteView seed)
    : seed_(seed.begin(), seed.end()) {}

DeterministicRng::DeterministicRng(uint64_t seed) {
  for (int i = 7; i >= 0; --i) seed_.push_back(static_cast<uint8_t>(seed >> (8 * i)));
}

void DeterministicRng::Refill() {
  Bytes input = seed_;
  for (int i = 7; i >= 0; --i) {
    input.push_back(static_cast<uint8_t>(counter_ >> (8 * i)));
  }
  ++counter_;
  block_ = PrgExpand(input, 136 * 8);
  used_ = 0;
}

void DeterministicRng::Fill(std::span<uint8_t> out) {
  size_t off = 0;
  while (off < out.size()) {
    if (used_ == block_.size()) Refill();
    const size_t n = std::min(out.size() - off, block_.size() - used_);
    std::copy_n(block_.begin() + used_, n, out.begin() + off);
    used_ += n;
    off += n;
  }
}

}  // namespace cred
