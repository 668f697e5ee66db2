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

#include "cred/lsss.h"

#include <utility>

namespace cred {

namespace {

constexpr size_t kMaxPolicyDepth = 128;

bool IsAttributeChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ':' ||
         c == '_' || c == '-';
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

Error SyntaxError(size_t offset, std::string message) {
  Error e = MakeError(ErrorCode::kSyntax, std::move(message));
  e.offset = offset;
  return e;
}

class PolicyParser {
 public:
  explicit PolicyParser(std::string_view text) : text_(text) {}

  Result<Policy> Run() {
    CRED_ASSIGN_OR_RETURN(Policy p, Expr(0));
    SkipSpace();
    if (pos_ != text_.size()) {
      return SyntaxError(pos_, "trailing input");
    }
    return p;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  bool Consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Status Expect(char c) {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      return SyntaxError(pos_, std::string("expected '") + c + "'");
    }
    ++pos_;
    return OkStatus();
  }

  Result<Policy> Expr(size_t depth) {
    if (depth > kMaxPolicyDepth) {
      return SyntaxError(pos_, "policy nested too deeply");
    }
    SkipSpace();
    if (pos_ >= text_.size()) {
      return SyntaxError(pos_, "expected attribute or gate");
    }
    const bool is_and = Consume("AND(");
    const bool is_or = !is_and && Consume("OR(");
    if (is_and || is_or) {
      CRED_ASSIGN_OR_RETURN(Policy left, Expr(depth + 1));
      CRED_RETURN_IF_ERROR(Expect(','));
      CRED_ASSIGN_OR_RETURN(Policy right, Expr(depth + 1));
      CRED_RETURN_IF_ERROR(Expect(')'));
      return is_and ? Policy::And(std::move(left), std::move(right))
                    : Policy::Or(std::move(left), std::move(right));
    }
    const size_t start = pos_;
    while (pos_ < text_.size() && IsAttributeChar(text_[pos_])) ++pos_;
    if (pos_ == start) {
      return SyntaxError(pos_, "expected attribute or gate");
    }
    std::string name(text_.substr(start, pos_ - start));
    if (!seen_.insert(name).second) {
      Error e = MakeError(ErrorCode::kDuplicateAttribute,
                          "attribute '" + name + "' appears twice");
      e.offset = start;
      return e;
    }
    return Policy::Leaf(std::move(name));
  }

  std::string_view text_;
  size_t pos_ = 0;
  AttributeSet seen_;
};

void CollectAttributes(const Policy& p, std::vector<std::string>& out) {
  if (p.is_leaf()) {
    out.push_back(p.attribute());
    return;
  }
  CollectAttributes(p.left(), out);
  CollectAttributes(p.right(), out);
}

// Rows are built as small integer vectors (entries in {-1, 0, 1}) and only
// lifted to scalars once the final width is known.
void CompileNode(const Policy& p, const std::vector<int>& vec, size_t& counter,
                 std::vector<std::vector<int>>& rows,
                 std::vector<std::string>& rho) {
  switch (p.kind()) {
    case Policy::Kind::kLeaf:
      rows.push_back(vec);
      rho.push_back(p.attribute());
      return;
    case Policy::Kind::kOr:
      CompileNode(p.left(), vec, counter, rows, rho);
      CompileNode(p.right(), vec, counter, rows, rho);
      return;
    case Policy::Kind::kAnd: {
      std::vector<int> left = vec;
      left.resize(counter, 0);
      left.push_back(1);
      std::vector<int> right(counter, 0);
      right.push_back(-1);
      ++counter;
      CompileNode(p.left(), left, counter, rows, rho);
      CompileNode(p.right(), right, counter, rows, rho);
      return;
    }
  }
}

}  // namespace

bool IsValidAttributeName(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!IsAttributeChar(c)) return false;
  }
  return true;
}

Policy Policy::Leaf(std::string attribute) {
  Policy p;
  p.kind_ = Kind::kLeaf;
  p.attribute_ = std::move(attribute);
  return p;
}

Policy Policy::And(Policy left, Policy right) {
  Policy p;
  p.kind_ = Kind::kAnd;
  p.children_.push_back(std::move(left));
  p.children_.push_back(std::move(right));
  return p;
}

Policy Policy::Or(Policy left, Policy right) {
  Policy p;
  p.kind_ = Kind::kOr;
  p.children_.push_back(std::move(left));
  p.children_.push_back(std::move(right));
  return p;
}

std::vector<std::string> Policy::Attributes() const {
  std::vector<std::string> out;
  CollectAttributes(*this, out);
  return out;
}

size_t Policy::LeafCount() const {
  if (is_leaf()) return 1;
  return left().LeafCount() + right().LeafCount();
}

size_t Policy::AndCount() const {
  if (is_leaf()) return 0;
  return (kind_ == Kind::kAnd ? 1 : 0) + left().AndCount() + right().AndCount();
}

bool Policy::operator==(const Policy& o) const {
  return kind_ == o.kind_ && attribute_ == o.attribute_ &&
         children_ == o.children_;
}

Result<Policy> ParsePolicy(std::string_view text) {
  return PolicyParser(text).Run();
}

std::string CanonicalPolicy(const Policy& policy) {
  switch (policy.kind()) {
    case Policy::Kind::kLeaf:
      return policy.attribute();
    case Policy::Kind::kAnd:
      return "AND(" + CanonicalPolicy(policy.left()) + "," +
             CanonicalPolicy(policy.right()) + ")";
    case Policy::Kind::kOr:
      return "OR(" + CanonicalPolicy(policy.left()) + "," +
             CanonicalPolicy(policy.right()) + ")";
  }
  return {};
}

Status ValidateAccessMatrix(const AccessMatrix& am) {
  if (am.rows.empty() || am.columns == 0) {
    return MakeError(ErrorCode::kInvalidArgument, "empty access matrix");
  }
  if (am.rho.size() != am.rows.size()) {
    return MakeError(ErrorCode::kInvalidArgument, "rho/row count mismatch");
  }
  AttributeSet seen;
  for (size_t k = 0; k < am.rows.size(); ++k) {
    if (am.rows[k].size() != am.columns) {
      return MakeError(ErrorCode::kInvalidArgument, "ragged access matrix");
    }
    if (!IsValidAttributeName(am.rho[k])) {
      return MakeError(ErrorCode::kInvalidArgument,
                       "bad attribute name '" + am.rho[k] + "'");
    }
    if (!seen.insert(am.rho[k]).second) {
      return MakeError(ErrorCode::kDuplicateAttribute,
                       "attribute '" + am.rho[k] + "' labels two rows");
    }
  }
  return OkStatus();
}

Result<AccessMatrix> CompilePolicy(const Policy& policy) {
  AttributeSet seen;
  for (const std::string& a : policy.Attributes()) {
    if (!IsValidAttributeName(a)) {
      return MakeError(ErrorCode::kInvalidArgument,
                       "bad attribute name '" + a + "'");
    }
    if (!seen.insert(a).second) {
      return MakeError(ErrorCode::kDuplicateAttribute,
                       "attribute '" + a + "' appears twice");
    }
  }

  std::vector<std::vector<int>> int_rows;
  AccessMatrix am;
  size_t counter = 1;
  CompileNode(policy, {1}, counter, int_rows, am.rho);
  am.columns = counter;
  am.rows.reserve(int_rows.size());
  for (const auto& r : int_rows) {
    std::vector<Scalar> row(counter);
    for (size_t j = 0; j < r.size(); ++j) row[j] = Scalar::FromInt64(r[j]);
    am.rows.push_back(std::move(row));
  }
  return am;
}

std::optional<ReconstructionCoefficients> SolveReconstruction(
    const AccessMatrix& am, const AttributeSet& attrs) {
  std::vector<size_t> selected;
  for (size_t k = 0; k < am.rows.size(); ++k) {
    if (attrs.count(am.rho[k]) != 0) selected.push_back(k);
  }
  const size_t vars = selected.size();
  const size_t eqs = am.columns;
  if (vars == 0 || eqs == 0) return std::nullopt;

  // Equation j: sum_v omega_v * M[selected[v]][j] = (j == 0 ? 1 : 0).
  // Augmented column index `vars` holds the right-hand side.
  std::vector<std::vector<Scalar>> a(eqs, std::vector<Scalar>(vars + 1));
  for (size_t j = 0; j < eqs; ++j) {
    for (size_t v = 0; v < vars; ++v) a[j][v] = am.rows[selected[v]][j];
    a[j][vars] = j == 0 ? Scalar::One() : Scalar::Zero();
  }

  std::vector<std::optional<size_t>> pivot_row_of_var(vars);
  size_t rank = 0;
  for (size_t v = 0; v < vars && rank < eqs; ++v) {
    size_t pivot = rank;
    while (pivot < eqs && a[pivot][v].IsZero()) ++pivot;
    if (pivot == eqs) continue;
    std::swap(a[pivot], a[rank]);
    const Scalar inv = a[rank][v].Inverse();
    for (auto& x : a[rank]) x *= inv;
    for (size_t r = 0; r < eqs; ++r) {
      if (r == rank || a[r][v].IsZero()) continue;
      const Scalar f = a[r][v];
      for (size_t c = 0; c <= vars; ++c) a[r][c] -= f * a[rank][c];
    }
    pivot_row_of_var[v] = rank;
    ++rank;
  }
  // Remaining equations have all-zero coefficients; they must be 0 = 0.
  for (size_t r = rank; r < eqs; ++r) {
    if (!a[r][vars].IsZero()) return std::nullopt;
  }

  ReconstructionCoefficients out;
  for (size_t v = 0; v < vars; ++v) {
    if (!pivot_row_of_var[v]) continue;
    const Scalar& w = a[*pivot_row_of_var[v]][vars];
    if (!w.IsZero()) out.emplace(selected[v], w);
  }
  return out;
}

}  // namespace cred
