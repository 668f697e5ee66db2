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

// Bilinear group abstraction over BLS12-381 (suite "CRED1").
//
// The pairing is asymmetric. Everything a ciphertext or an accumulator value
// carries lives on the cipher side (G1); every key component, witness and the
// published gamma-power sequence lives on the key side (G2). All groups are
// written multiplicatively: `*` is the group law and Pow() exponentiates.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "blst.h"
#include "cred/rng.h"
#include "cred/status.h"

namespace cred {

inline constexpr std::string_view kSuiteId = "CRED1";

// Integer modulo the prime group order p (255 bits).
class Scalar {
 public:
  static constexpr size_t kEncodedSize = 32;
  // ceil((bitlen(p) + 128) / 8): oversampled width for bias-free reduction.
  static constexpr size_t kSampleSize = 48;

  Scalar();

  static Scalar Zero() { return Scalar(); }
  static Scalar One();
  static Scalar FromUint64(uint64_t v);
  static Scalar FromInt64(int64_t v);
  // Interprets `bytes` as a big-endian integer of any length and reduces mod p.
  static Scalar FromBytesReduced(ByteView bytes);
  // Strict decoding of the 32-byte big-endian form; rejects values >= p.
  static Result<Scalar> Decode(ByteView bytes);
  static Scalar Random(Rng& rng);

  std::array<uint8_t, kEncodedSize> Encode() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Multiplicative inverse; the inverse of zero is zero.
  Scalar Inverse() const;
  Scalar Pow(uint64_t e) const;
  bool IsZero() const;

  bool operator==(const Scalar& o) const;

  // Little-endian canonical integer, as blst's point multiplication wants it.
  blst_scalar ToBlst() const;

 private:
  blst_fr fr_;
};

// Element of the cipher-side source group G1.
class CipherElement {
 public:
  static constexpr size_t kEncodedSize = 48;

  CipherElement();  // identity

  static CipherElement Identity() { return CipherElement(); }
  static CipherElement Generator();
  static Result<CipherElement> Decode(ByteView bytes);

  std::array<uint8_t, kEncodedSize> Encode() const;

  CipherElement operator*(const CipherElement& o) const;
  CipherElement& operator*=(const CipherElement& o) { return *this = *this * o; }
  CipherElement Pow(const Scalar& e) const;
  CipherElement Inverse() const;
  bool IsIdentity() const;
  bool operator==(const CipherElement& o) const;

  const blst_p1& raw() const { return p_; }

 private:
  blst_p1 p_;
};

// Element of the key-side source group G2.
class KeyElement {
 public:
  static constexpr size_t kEncodedSize = 96;

  KeyElement();  // identity

  static KeyElement Identity() { return KeyElement(); }
  static KeyElement Generator();
  static Result<KeyElement> Decode(ByteView bytes);

  std::array<uint8_t, kEncodedSize> Encode() const;

  KeyElement operator*(const KeyElement& o) const;
  KeyElement& operator*=(const KeyElement& o) { return *this = *this * o; }
  KeyElement Pow(const Scalar& e) const;
  KeyElement Inverse() const;
  bool IsIdentity() const;
  bool operator==(const KeyElement& o) const;

  const blst_p2& raw() const { return p_; }

 private:
  blst_p2 p_;
};

// Element of the target group G_T (order-p subgroup of Fp12^*).
//
// Encoding: the twelve Fp coefficients as 48-byte big-endian integers, in
// tower order c0.c0.c0, c0.c0.c1, c0.c1.c0, ..., c1.c2.c1 (Fp12 = Fp6[w],
// Fp6 = Fp2[v], Fp2 = Fp[u]). Equal elements always encode identically.
class TargetElement {
 public:
  static constexpr size_t kEncodedSize = 576;

  TargetElement();  // one

  static TargetElement One() { return TargetElement(); }
  static Result<TargetElement> Decode(ByteView bytes);

  Bytes Encode() const;

  TargetElement operator*(const TargetElement& o) const;
  TargetElement& operator*=(const TargetElement& o) { return *this = *this * o; }
  TargetElement Pow(const Scalar& e) const;
  TargetElement Inverse() const;
  bool IsOne() const;
  bool operator==(const TargetElement& o) const;

 private:
  friend TargetElement Pair(const CipherElement&, const KeyElement&);
  friend class PairingProduct;

  blst_fp12 f_;
};

TargetElement Pair(const CipherElement& a, const KeyElement& b);

// Accumulates a product of pairings and applies the final exponentiation once.
class PairingProduct {
 public:
  PairingProduct& Add(const CipherElement& a, const KeyElement& b);
  TargetElement Finish() const;

 private:
  TargetElement acc_;
  bool any_ = false;
};

struct PairingContext {
  std::string_view suite_id;
  // Big-endian hex of the group order p.
  std::string_view order_hex;
  CipherElement cipher_generator;
  KeyElement key_generator;

  static const PairingContext& Default();
};

// ---- hashing and expansion (suite profile) ----

// H(x) = SHA-256("cred1/kdf" || x).
std::array<uint8_t, 32> KdfHash(ByteView data);
// H'(x) = SHA-256("cred1/seed" || x).
std::array<uint8_t, 32> SeedHash(ByteView data);
// PRG(seed, bits) = SHAKE256(seed) truncated to `bits`. bits % 8 == 0.
Bytes PrgExpand(ByteView seed, size_t bits);
// Reads `count` consecutive kSampleSize-byte chunks of PRG(seed, .) and
// reduces each mod p.
std::vector<Scalar> DeriveScalars(ByteView seed, size_t count);

}  // namespace cred
