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

#include "cred/algebra.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace cred {

namespace {

constexpr size_t kScalarBits = 255;

bool ScalarBit(const blst_scalar& s, size_t i) {
  return (s.b[i / 8] >> (i % 8)) & 1;
}

}  // namespace

// ---- Scalar ----

Scalar::Scalar() { std::memset(&fr_, 0, sizeof(fr_)); }

Scalar Scalar::One() { return FromUint64(1); }

Scalar Scalar::FromUint64(uint64_t v) {
  const uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar out;
  blst_fr_from_uint64(&out.fr_, limbs);
  return out;
}

Scalar Scalar::FromInt64(int64_t v) {
  if (v >= 0) return FromUint64(static_cast<uint64_t>(v));
  // -(v + 1) + 1 avoids overflow at INT64_MIN.
  return -(FromUint64(static_cast<uint64_t>(-(v + 1))) + One());
}

Scalar Scalar::FromBytesReduced(ByteView bytes) {
  blst_scalar s;
  std::memset(&s, 0, sizeof(s));
  if (!bytes.empty()) {
    blst_scalar_from_be_bytes(&s, bytes.data(), bytes.size());
  }
  Scalar out;
  blst_fr_from_scalar(&out.fr_, &s);
  return out;
}

Result<Scalar> Scalar::Decode(ByteView bytes) {
  if (bytes.size() != kEncodedSize) {
    return MakeError(ErrorCode::kMalformedEnvelope, "scalar must be 32 bytes");
  }
  blst_scalar s;
  blst_scalar_from_bendian(&s, bytes.data());
  bool zero = true;
  for (uint8_t b : bytes) zero = zero && b == 0;
  if (!zero && !blst_scalar_fr_check(&s)) {
    return MakeError(ErrorCode::kMalformedEnvelope, "scalar out of range");
  }
  Scalar out;
  blst_fr_from_scalar(&out.fr_, &s);
  return out;
}

Scalar Scalar::Random(Rng& rng) {
  std::array<uint8_t, kSampleSize> buf;
  rng.Fill(buf);
  return FromBytesReduced(buf);
}

std::array<uint8_t, Scalar::kEncodedSize> Scalar::Encode() const {
  blst_scalar s;
  blst_scalar_from_fr(&s, &fr_);
  std::array<uint8_t, kEncodedSize> out;
  blst_bendian_from_scalar(out.data(), &s);
  return out;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar out;
  blst_fr_add(&out.fr_, &fr_, &o.fr_);
  return out;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar out;
  blst_fr_sub(&out.fr_, &fr_, &o.fr_);
  return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar out;
  blst_fr_mul(&out.fr_, &fr_, &o.fr_);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out;
  blst_fr_cneg(&out.fr_, &fr_, true);
  return out;
}

Scalar Scalar::Inverse() const {
  if (IsZero()) return Scalar();
  Scalar out;
  blst_fr_eucl_inverse(&out.fr_, &fr_);
  return out;
}

Scalar Scalar::Pow(uint64_t e) const {
  Scalar result = One();
  Scalar base = *this;
  while (e != 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool Scalar::IsZero() const { return *this == Scalar(); }

bool Scalar::operator==(const Scalar& o) const {
  return std::memcmp(&fr_, &o.fr_, sizeof(fr_)) == 0;
}

blst_scalar Scalar::ToBlst() const {
  blst_scalar s;
  blst_scalar_from_fr(&s, &fr_);
  return s;
}

// ---- CipherElement ----

CipherElement::CipherElement() { std::memset(&p_, 0, sizeof(p_)); }

CipherElement CipherElement::Generator() {
  CipherElement out;
  out.p_ = *blst_p1_generator();
  return out;
}

Result<CipherElement> CipherElement::Decode(ByteView bytes) {
  if (bytes.size() != kEncodedSize) {
    return MakeError(ErrorCode::kMalformedEnvelope,
                     "cipher-side element must be 48 bytes");
  }
  blst_p1_affine a;
  if (blst_p1_uncompress(&a, bytes.data()) != BLST_SUCCESS) {
    return MakeError(ErrorCode::kMalformedEnvelope, "bad G1 encoding");
  }
  if (!blst_p1_affine_in_g1(&a)) {
    return MakeError(ErrorCode::kMalformedEnvelope, "G1 point not in subgroup");
  }
  CipherElement out;
  blst_p1_from_affine(&out.p_, &a);
  return out;
}

std::array<uint8_t, CipherElement::kEncodedSize> CipherElement::Encode() const {
  std::array<uint8_t, kEncodedSize> out;
  blst_p1_compress(out.data(), &p_);
  return out;
}

CipherElement CipherElement::operator*(const CipherElement& o) const {
  CipherElement out;
  blst_p1_add_or_double(&out.p_, &p_, &o.p_);
  return out;
}

CipherElement CipherElement::Pow(const Scalar& e) const {
  const blst_scalar s = e.ToBlst();
  CipherElement out;
  blst_p1_mult(&out.p_, &p_, s.b, kScalarBits);
  return out;
}

CipherElement CipherElement::Inverse() const {
  CipherElement out = *this;
  blst_p1_cneg(&out.p_, true);
  return out;
}

bool CipherElement::IsIdentity() const { return blst_p1_is_inf(&p_); }

bool CipherElement::operator==(const CipherElement& o) const {
  return blst_p1_is_equal(&p_, &o.p_);
}

// ---- KeyElement ----

KeyElement::KeyElement() { std::memset(&p_, 0, sizeof(p_)); }

KeyElement KeyElement::Generator() {
  KeyElement out;
  out.p_ = *blst_p2_generator();
  return out;
}

Result<KeyElement> KeyElement::Decode(ByteView bytes) {
  if (bytes.size() != kEncodedSize) {
    return MakeError(ErrorCode::kMalformedEnvelope,
                     "key-side element must be 96 bytes");
  }
  blst_p2_affine a;
  if (blst_p2_uncompress(&a, bytes.data()) != BLST_SUCCESS) {
    return MakeError(ErrorCode::kMalformedEnvelope, "bad G2 encoding");
  }
  if (!blst_p2_affine_in_g2(&a)) {
    return MakeError(ErrorCode::kMalformedEnvelope, "G2 point not in subgroup");
  }
  KeyElement out;
  blst_p2_from_affine(&out.p_, &a);
  return out;
}

std::array<uint8_t, KeyElement::kEncodedSize> KeyElement::Encode() const {
  std::array<uint8_t, kEncodedSize> out;
  blst_p2_compress(out.data(), &p_);
  return out;
}

KeyElement KeyElement::operator*(const KeyElement& o) const {
  KeyElement out;
  blst_p2_add_or_double(&out.p_, &p_, &o.p_);
  return out;
}

KeyElement KeyElement::Pow(const Scalar& e) const {
  const blst_scalar s = e.ToBlst();
  KeyElement out;
  blst_p2_mult(&out.p_, &p_, s.b, kScalarBits);
  return out;
}

KeyElement KeyElement::Inverse() const {
  KeyElement out = *this;
  blst_p2_cneg(&out.p_, true);
  return out;
}

bool KeyElement::IsIdentity() const { return blst_p2_is_inf(&p_); }

bool KeyElement::operator==(const KeyElement& o) const {
  return blst_p2_is_equal(&p_, &o.p_);
}

// ---- TargetElement ----

TargetElement::TargetElement() : f_(*blst_fp12_one()) {}

namespace {

template <typename Fn>
void ForEachCoefficient(blst_fp12& f, Fn&& fn) {
  for (auto& fp6 : f.fp6) {
    for (auto& fp2 : fp6.fp2) {
      for (auto& fp : fp2.fp) fn(fp);
    }
  }
}

}  // namespace

Result<TargetElement> TargetElement::Decode(ByteView bytes) {
  if (bytes.size() != kEncodedSize) {
    return MakeError(ErrorCode::kMalformedEnvelope,
                     "target element must be 576 bytes");
  }
  TargetElement out;
  size_t off = 0;
  ForEachCoefficient(out.f_, [&](blst_fp& fp) {
    blst_fp_from_bendian(&fp, bytes.data() + off);
    off += 48;
  });
  // blst_fp_from_bendian does not range-check; a non-canonical coefficient
  // shows up as a re-encoding mismatch.
  const Bytes again = out.Encode();
  if (!std::equal(again.begin(), again.end(), bytes.begin())) {
    return MakeError(ErrorCode::kMalformedEnvelope,
                     "non-canonical target encoding");
  }
  if (!blst_fp12_in_group(&out.f_)) {
    return MakeError(ErrorCode::kMalformedEnvelope, "not in target group");
  }
  return out;
}

Bytes TargetElement::Encode() const {
  Bytes out(kEncodedSize);
  blst_fp12 copy = f_;
  size_t off = 0;
  ForEachCoefficient(copy, [&](blst_fp& fp) {
    blst_bendian_from_fp(out.data() + off, &fp);
    off += 48;
  });
  return out;
}

TargetElement TargetElement::operator*(const TargetElement& o) const {
  TargetElement out;
  blst_fp12_mul(&out.f_, &f_, &o.f_);
  return out;
}

TargetElement TargetElement::Pow(const Scalar& e) const {
  // Every TargetElement lies in the cyclotomic subgroup, so the cheaper
  // cyclotomic squaring applies.
  const blst_scalar s = e.ToBlst();
  TargetElement out;
  bool started = false;
  for (size_t i = kScalarBits; i-- > 0;) {
    if (started) blst_fp12_cyclotomic_sqr(&out.f_, &out.f_);
    if (ScalarBit(s, i)) {
      if (started) {
        blst_fp12_mul(&out.f_, &out.f_, &f_);
      } else {
        out.f_ = f_;
        started = true;
      }
    }
  }
  return out;
}

TargetElement TargetElement::Inverse() const {
  // Unitary: the inverse is the conjugate.
  TargetElement out = *this;
  blst_fp12_conjugate(&out.f_);
  return out;
}

bool TargetElement::IsOne() const { return blst_fp12_is_one(&f_); }

bool TargetElement::operator==(const TargetElement& o) const {
  return blst_fp12_is_equal(&f_, &o.f_);
}

// ---- pairing ----

TargetElement Pair(const CipherElement& a, const KeyElement& b) {
  return PairingProduct().Add(a, b).Finish();
}

PairingProduct& PairingProduct::Add(const CipherElement& a,
                                    const KeyElement& b) {
  if (a.IsIdentity() || b.IsIdentity()) return *this;
  blst_p1_affine pa;
  blst_p2_affine pb;
  blst_p1_to_affine(&pa, &a.raw());
  blst_p2_to_affine(&pb, &b.raw());
  blst_fp12 ml;
  blst_miller_loop(&ml, &pb, &pa);
  if (any_) {
    blst_fp12_mul(&acc_.f_, &acc_.f_, &ml);
  } else {
    acc_.f_ = ml;
    any_ = true;
  }
  return *this;
}

TargetElement PairingProduct::Finish() const {
  if (!any_) return TargetElement::One();
  TargetElement out;
  blst_final_exp(&out.f_, &acc_.f_);
  return out;
}

const PairingContext& PairingContext::Default() {
  static const PairingContext ctx{
      kSuiteId,
      "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001",
      CipherElement::Generator(), KeyElement::Generator()};
  return ctx;
}

// ---- hashing ----

namespace {

std::array<uint8_t, 32> PrefixedSha256(std::string_view prefix,
                                       ByteView data) {
  std::array<uint8_t, 32> out;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  unsigned int len = 0;
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, prefix.data(), prefix.size()) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, out.data(), &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 failed");
  }
  EVP_MD_CTX_free(ctx);
  return out;
}

}  // namespace

std::array<uint8_t, 32> KdfHash(ByteView data) {
  return PrefixedSha256("cred1/kdf", data);
}

std::array<uint8_t, 32> SeedHash(ByteView data) {
  return PrefixedSha256("cred1/seed", data);
}

Bytes PrgExpand(ByteView seed, size_t bits) {
  if (bits % 8 != 0) throw std::invalid_argument("PRG length must be bytes");
  Bytes out(bits / 8);
  if (out.empty()) return out;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, seed.data(), seed.size()) != 1 ||
      EVP_DigestFinalXOF(ctx, out.data(), out.size()) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHAKE256 failed");
  }
  EVP_MD_CTX_free(ctx);
  return out;
}

std::vector<Scalar> DeriveScalars(ByteView seed, size_t count) {
  const Bytes stream = PrgExpand(seed, count * Scalar::kSampleSize * 8);
  std::vector<Scalar> out;
  out.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    out.push_back(Scalar::FromBytesReduced(
        ByteView(stream).subspan(k * Scalar::kSampleSize, Scalar::kSampleSize)));
  }
  return out;
}

}  // namespace cred
