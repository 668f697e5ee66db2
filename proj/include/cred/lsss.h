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

// Monotone boolean policies and their linear secret-sharing matrices.
//
// Grammar (whitespace between tokens is ignored on input, never emitted):
//
//   expr := atom | "AND(" expr "," expr ")" | "OR(" expr "," expr ")"
//   atom := [a-z0-9:_-]+
//
// An attribute may label at most one leaf of a policy.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cred/algebra.h"
#include "cred/status.h"

namespace cred {

using AttributeSet = std::set<std::string>;

bool IsValidAttributeName(std::string_view name);

class Policy {
 public:
  enum class Kind { kLeaf, kAnd, kOr };

  static Policy Leaf(std::string attribute);
  static Policy And(Policy left, Policy right);
  static Policy Or(Policy left, Policy right);

  Kind kind() const { return kind_; }
  bool is_leaf() const { return kind_ == Kind::kLeaf; }
  // Only meaningful for leaves.
  const std::string& attribute() const { return attribute_; }
  // Only meaningful for gates.
  const Policy& left() const { return children_[0]; }
  const Policy& right() const { return children_[1]; }

  // Leaf attributes in left-to-right order.
  std::vector<std::string> Attributes() const;
  size_t LeafCount() const;
  size_t AndCount() const;

  bool operator==(const Policy& o) const;

 private:
  Policy() = default;

  Kind kind_ = Kind::kLeaf;
  std::string attribute_;
  std::vector<Policy> children_;
};

// Syntax errors carry the byte offset of the offending token.
Result<Policy> ParsePolicy(std::string_view text);

// Whitespace-free grammar text; injective on policies.
std::string CanonicalPolicy(const Policy& policy);

inline Bytes CanonicalPolicyBytes(const Policy& policy) {
  const std::string s = CanonicalPolicy(policy);
  return Bytes(s.begin(), s.end());
}

// LSSS access structure (M, rho): row k of `rows` is labelled by rho[k].
struct AccessMatrix {
  std::vector<std::vector<Scalar>> rows;
  std::vector<std::string> rho;
  size_t columns = 0;

  size_t row_count() const { return rows.size(); }
  bool operator==(const AccessMatrix& o) const = default;
};

// Checks shape and injectivity of rho. Used on matrices that did not come
// from CompilePolicy (e.g. decoded from the wire).
Status ValidateAccessMatrix(const AccessMatrix& am);

// Monotone-formula to LSSS conversion. Width is 1 + number of AND gates,
// one row per leaf.
Result<AccessMatrix> CompilePolicy(const Policy& policy);

// Row index -> coefficient. Only rows whose attribute is held appear, and
// rows with a zero coefficient are omitted.
using ReconstructionCoefficients = std::map<size_t, Scalar>;

// Returns omega with sum_k omega_k * M_k = (1, 0, ..., 0) over the rows whose
// attribute is in `attrs`, or nullopt when those rows do not span the target.
// Gaussian elimination pivots on the lowest row index first and sets free
// variables to zero, so the answer is deterministic.
std::optional<ReconstructionCoefficients> SolveReconstruction(
    const AccessMatrix& am, const AttributeSet& attrs);

}  // namespace cred
