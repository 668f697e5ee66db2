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
#include <span>

#include "cred/status.h"

namespace cred {

// Source of uniformly random bytes. Every randomized operation takes one
// explicitly so tests can substitute a reproducible stream.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void Fill(std::span<uint8_t> out) = 0;

  Bytes Draw(size_t n) {
    Bytes out(n);
    Fill(out);
    return out;
  }
};

// Operating-system randomness (OpenSSL RAND_bytes).
class SystemRng final : public Rng {
 public:
  void Fill(std::span<uint8_t> out) override;
};

// Reproducible stream: block k is SHAKE256(seed || be64(k)).
class DeterministicRng final : public Rng {
 public:
  explicit DeterministicRng(ByteView seed);
  explicit DeterministicRng(uint64_t seed);

  void Fill(std::span<uint8_t> out) override;

 private:
  void Refill();

  Bytes seed_;
  uint64_t counter_ = 0;
  Bytes block_;
  size_t used_ = 0;
};

}  // namespace cred
