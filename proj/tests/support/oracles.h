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

// Reference implementations used as test oracles. Nothing here shares code
// with the library under test.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cred/lsss.h"
#include "cred/status.h"

namespace cred::testing {

// FIPS 202 SHAKE256 written from the Keccak-f[1600] definition.
Bytes Shake256(ByteView input, size_t out_len);

// FIPS 180-4 SHA-256.
std::array<uint8_t, 32> Sha256(ByteView input);

Bytes ToBytes(std::string_view s);
std::string Hex(ByteView bytes);
Bytes FromHex(std::string_view hex);

// Plain boolean evaluation of a policy.
bool Evaluate(const Policy& policy, const AttributeSet& attrs);

// Random binary policy over distinct attributes drawn from `pool`.
Policy RandomPolicy(std::mt19937_64& gen, const std::vector<std::string>& pool,
                    size_t max_leaves);

// Calls `visit` on every policy of gate depth <= max_depth whose leaves are
// distinct attributes from `pool`.
void EnumeratePolicies(const std::vector<std::string>& pool, size_t max_depth,
                       const std::function<void(const Policy&)>& visit);

AttributeSet SubsetFromMask(const std::vector<std::string>& pool, uint32_t mask);

// Random subset of `pool`, forced to satisfy or violate the policy.
std::optional<AttributeSet> RandomSubset(std::mt19937_64& gen,
                                         const std::vector<std::string>& pool,
                                         const Policy& policy, bool satisfying);

// sum_k omega_k M_k == (1, 0, .., 0) with support on rows held in attrs.
bool CoefficientsReconstruct(const AccessMatrix& am, const AttributeSet& attrs,
                             const ReconstructionCoefficients& omega);

// Exhaustive search for integer coefficients mod a small prime q. Matrix
// entries must be in {-1, 0, 1}.
bool SolvableModSmallPrime(const AccessMatrix& am, const AttributeSet& attrs,
                           int q);

std::vector<std::string> Universe(size_t n);

}  // namespace cred::testing
