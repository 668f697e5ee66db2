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

#include "oracles.h"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace cred::testing {

namespace {

constexpr uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

uint64_t Rotl(uint64_t x, unsigned n) {
  return n == 0 ? x : (x << n) | (x >> (64 - n));
}

// State lanes are indexed a[x + 5y].
void KeccakF(uint64_t a[25]) {
  // Rotation offsets r[x][y].
  static constexpr unsigned kRho[5][5] = {{0, 36, 3, 41, 18},
                                          {1, 44, 10, 45, 2},
                                          {62, 6, 43, 15, 61},
                                          {28, 55, 25, 21, 56},
                                          {27, 20, 39, 8, 14}};
  for (uint64_t rc : kRoundConstants) {
    uint64_t c[5], d[5], b[25];
    for (int x = 0; x < 5; ++x) {
      c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    }
    for (int x = 0; x < 5; ++x) d[x] = c[(x + 4) % 5] ^ Rotl(c[(x + 1) % 5], 1);
    for (int i = 0; i < 25; ++i) a[i] ^= d[i % 5];
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) {
        b[y + 5 * ((2 * x + 3 * y) % 5)] = Rotl(a[x + 5 * y], kRho[x][y]);
      }
    }
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) {
        a[x + 5 * y] =
            b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
      }
    }
    a[0] ^= rc;
  }
}

void XorByte(uint64_t a[25], size_t pos, uint8_t v) {
  a[pos / 8] ^= static_cast<uint64_t>(v) << (8 * (pos % 8));
}

uint8_t GetByte(const uint64_t a[25], size_t pos) {
  return static_cast<uint8_t>(a[pos / 8] >> (8 * (pos % 8)));
}

uint32_t Rotr(uint32_t x, unsigned n) { return (x >> n) | (x << (32 - n)); }

size_t CountGates(const Policy& p) {
  return p.is_leaf() ? 0 : 1 + CountGates(p.left()) + CountGates(p.right());
}

int SmallInt(const Scalar& s) {
  if (s.IsZero()) return 0;
  if (s == Scalar::One()) return 1;
  if (s == Scalar::FromInt64(-1)) return -1;
  throw std::invalid_argument("matrix entry outside {-1, 0, 1}");
}

// Shapes are trees whose leaves are placeholders, filled in later.
struct Shape {
  int gate = -1;  // -1 leaf, 0 AND, 1 OR
  std::vector<Shape> kids;
  size_t leaves = 1;
};

std::vector<Shape> Shapes(size_t depth, size_t max_leaves) {
  std::vector<Shape> out{Shape{}};
  if (depth == 0) return out;
  const std::vector<Shape> sub = Shapes(depth - 1, max_leaves);
  for (const Shape& l : sub) {
    for (const Shape& r : sub) {
      if (l.leaves + r.leaves > max_leaves) continue;
      for (int gate = 0; gate < 2; ++gate) {
        out.push_back(Shape{gate, {l, r}, l.leaves + r.leaves});
      }
    }
  }
  return out;
}

Policy Fill(const Shape& s, const std::vector<std::string>& labels, size_t& next) {
  if (s.gate < 0) return Policy::Leaf(labels[next++]);
  Policy l = Fill(s.kids[0], labels, next);
  Policy r = Fill(s.kids[1], labels, next);
  return s.gate == 0 ? Policy::And(std::move(l), std::move(r))
                     : Policy::Or(std::move(l), std::move(r));
}

Policy RandomTree(std::mt19937_64& gen, std::vector<std::string>& labels,
                  size_t leaves) {
  if (leaves == 1) {
    std::string a = labels.back();
    labels.pop_back();
    return Policy::Leaf(std::move(a));
  }
  const size_t left = std::uniform_int_distribution<size_t>(1, leaves - 1)(gen);
  Policy l = RandomTree(gen, labels, left);
  Policy r = RandomTree(gen, labels, leaves - left);
  return gen() & 1 ? Policy::And(std::move(l), std::move(r))
                   : Policy::Or(std::move(l), std::move(r));
}

}  // namespace

Bytes Shake256(ByteView input, size_t out_len) {
  constexpr size_t kRate = 136;
  uint64_t a[25] = {};
  size_t pos = 0;
  for (uint8_t byte : input) {
    XorByte(a, pos++, byte);
    if (pos == kRate) {
      KeccakF(a);
      pos = 0;
    }
  }
  XorByte(a, pos, 0x1f);
  XorByte(a, kRate - 1, 0x80);
  KeccakF(a);
  Bytes out;
  pos = 0;
  while (out.size() < out_len) {
    if (pos == kRate) {
      KeccakF(a);
      pos = 0;
    }
    out.push_back(GetByte(a, pos++));
  }
  return out;
}

std::array<uint8_t, 32> Sha256(ByteView input) {
  static constexpr uint32_t k[64] = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
      0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
      0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
      0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
      0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
      0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
      0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
      0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
      0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
      0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
  uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                   0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  Bytes msg(input.begin(), input.end());
  const uint64_t bit_len = static_cast<uint64_t>(input.size()) * 8;
  msg.push_back(0x80);
  while (msg.size() % 64 != 56) msg.push_back(0);
  for (int i = 7; i >= 0; --i) msg.push_back(static_cast<uint8_t>(bit_len >> (8 * i)));

  for (size_t off = 0; off < msg.size(); off += 64) {
    uint32_t w[64];
    for (int i = 0; i < 16; ++i) {
      w[i] = uint32_t(msg[off + 4 * i]) << 24 | uint32_t(msg[off + 4 * i + 1]) << 16 |
             uint32_t(msg[off + 4 * i + 2]) << 8 | uint32_t(msg[off + 4 * i + 3]);
    }
    for (int i = 16; i < 64; ++i) {
      const uint32_t s0 = Rotr(w[i - 15], 7) ^ Rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const uint32_t s1 = Rotr(w[i - 2], 17) ^ Rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
             g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const uint32_t s1 = Rotr(e, 6) ^ Rotr(e, 11) ^ Rotr(e, 25);
      const uint32_t ch = (e & f) ^ (~e & g);
      const uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      const uint32_t s0 = Rotr(a, 2) ^ Rotr(a, 13) ^ Rotr(a, 22);
      const uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d;
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
  }
  std::array<uint8_t, 32> out;
  for (int i = 0; i < 8; ++i) {
    out[4 * i] = static_cast<uint8_t>(h[i] >> 24);
    out[4 * i + 1] = static_cast<uint8_t>(h[i] >> 16);
    out[4 * i + 2] = static_cast<uint8_t>(h[i] >> 8);
    out[4 * i + 3] = static_cast<uint8_t>(h[i]);
  }
  return out;
}

Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string Hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

Bytes FromHex(std::string_view hex) {
  Bytes out;
  for (size_t i = 0; i + 1 < hex.size(); i += 2) {
    out.push_back(static_cast<uint8_t>(std::stoi(std::string(hex.substr(i, 2)), nullptr, 16)));
  }
  return out;
}

bool Evaluate(const Policy& policy, const AttributeSet& attrs) {
  switch (policy.kind()) {
    case Policy::Kind::kLeaf:
      return attrs.count(policy.attribute()) != 0;
    case Policy::Kind::kAnd:
      return Evaluate(policy.left(), attrs) && Evaluate(policy.right(), attrs);
    case Policy::Kind::kOr:
      return Evaluate(policy.left(), attrs) || Evaluate(policy.right(), attrs);
  }
  return false;
}

Policy RandomPolicy(std::mt19937_64& gen, const std::vector<std::string>& pool,
                    size_t max_leaves) {
  std::vector<std::string> labels = pool;
  std::shuffle(labels.begin(), labels.end(), gen);
  const size_t cap = std::min(max_leaves, labels.size());
  const size_t leaves = std::uniform_int_distribution<size_t>(1, cap)(gen);
  labels.resize(leaves);
  return RandomTree(gen, labels, leaves);
}

void EnumeratePolicies(const std::vector<std::string>& pool, size_t max_depth,
                       const std::function<void(const Policy&)>& visit) {
  for (const Shape& shape : Shapes(max_depth, pool.size())) {
    // Every ordered choice of distinct labels for the leaves.
    const size_t n = shape.leaves;
    std::vector<size_t> pick(n, 0);
    std::function<void(size_t, uint32_t)> rec = [&](size_t pos, uint32_t used) {
      if (pos == n) {
        std::vector<std::string> labels;
        for (size_t i : pick) labels.push_back(pool[i]);
        size_t next = 0;
        visit(Fill(shape, labels, next));
        return;
      }
      for (size_t i = 0; i < pool.size(); ++i) {
        if (used & (1u << i)) continue;
        pick[pos] = i;
        rec(pos + 1, used | (1u << i));
      }
    };
    rec(0, 0);
  }
}

AttributeSet SubsetFromMask(const std::vector<std::string>& pool, uint32_t mask) {
  AttributeSet out;
  for (size_t i = 0; i < pool.size(); ++i) {
    if (mask & (1u << i)) out.insert(pool[i]);
  }
  return out;
}

std::optional<AttributeSet> RandomSubset(std::mt19937_64& gen,
                                         const std::vector<std::string>& pool,
                                         const Policy& policy, bool satisfying) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    AttributeSet s;
    for (const auto& a : pool) {
      if (gen() & 1) s.insert(a);
    }
    if (Evaluate(policy, s) == satisfying) return s;
  }
  // Fall back to the extremes, which always work for monotone formulas.
  AttributeSet all(pool.begin(), pool.end());
  if (satisfying && Evaluate(policy, all)) return all;
  if (!satisfying && !Evaluate(policy, {})) return AttributeSet{};
  return std::nullopt;
}

bool CoefficientsReconstruct(const AccessMatrix& am, const AttributeSet& attrs,
                             const ReconstructionCoefficients& omega) {
  std::vector<Scalar> sum(am.columns, Scalar::Zero());
  for (const auto& [k, w] : omega) {
    if (k >= am.rows.size() || attrs.count(am.rho[k]) == 0) return false;
    for (size_t j = 0; j < am.columns; ++j) sum[j] += w * am.rows[k][j];
  }
  for (size_t j = 0; j < am.columns; ++j) {
    if (!(sum[j] == (j == 0 ? Scalar::One() : Scalar::Zero()))) return false;
  }
  return true;
}

bool SolvableModSmallPrime(const AccessMatrix& am, const AttributeSet& attrs,
                           int q) {
  std::vector<std::vector<int>> held;
  for (size_t k = 0; k < am.rows.size(); ++k) {
    if (attrs.count(am.rho[k]) == 0) continue;
    std::vector<int> row;
    for (const Scalar& s : am.rows[k]) row.push_back(SmallInt(s));
    held.push_back(std::move(row));
  }
  std::vector<int> coeff(held.size(), 0);
  for (;;) {
    bool ok = true;
    for (size_t j = 0; j < am.columns && ok; ++j) {
      int acc = 0;
      for (size_t k = 0; k < held.size(); ++k) acc += coeff[k] * held[k][j];
      acc = ((acc % q) + q) % q;
      ok = acc == (j == 0 ? 1 : 0);
    }
    if (ok) return true;
    size_t k = 0;
    while (k < coeff.size() && ++coeff[k] == q) coeff[k++] = 0;
    if (k == coeff.size()) return false;
  }
}

std::vector<std::string> Universe(size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back("attr" + std::to_string(i));
  return out;
}

}  // namespace cred::testing
