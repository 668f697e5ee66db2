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

#include <gtest/gtest.h>

#include "support/oracles.h"

namespace cred {
namespace {

using testing::CoefficientsReconstruct;
using testing::Evaluate;
using testing::SolvableModSmallPrime;

std::vector<std::vector<Scalar>> Ints(std::vector<std::vector<int>> rows) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& r : rows) {
    std::vector<Scalar> row;
    for (int v : r) row.push_back(Scalar::FromInt64(v));
    out.push_back(std::move(row));
  }
  return out;
}

AccessMatrix Compile(std::string_view text) {
  auto p = ParsePolicy(text);
  EXPECT_TRUE(p.ok()) << text;
  auto am = CompilePolicy(*p);
  EXPECT_TRUE(am.ok()) << text;
  return *am;
}

TEST(ParsePolicy, Leaf) {
  auto p = ParsePolicy("att:a");
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(*p, Policy::Leaf("att:a"));
}

TEST(ParsePolicy, Gates) {
  auto p = ParsePolicy("AND(att:a,att:b)");
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(*p, Policy::And(Policy::Leaf("att:a"), Policy::Leaf("att:b")));
  auto q = ParsePolicy("AND(OR(a,b),c)");
  ASSERT_TRUE(q.ok());
  EXPECT_EQ(*q, Policy::And(Policy::Or(Policy::Leaf("a"), Policy::Leaf("b")),
                            Policy::Leaf("c")));
}

TEST(ParsePolicy, ToleratesWhitespace) {
  auto p = ParsePolicy("  AND( a ,\tOR(b , c) ) ");
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(CanonicalPolicy(*p), "AND(a,OR(b,c))");
}

TEST(ParsePolicy, UnbalancedInputReportsEndOffset) {
  auto p = ParsePolicy("AND(att:a,");
  ASSERT_FALSE(p.ok());
  EXPECT_EQ(p.code(), ErrorCode::kSyntax);
  EXPECT_EQ(p.error().offset, 10u);
}

TEST(ParsePolicy, SyntaxErrors) {
  for (const char* bad : {"", "AND", "AND()", "AND(a)", "AND(a,b", "AND(a,b))",
                          "Att", "a b", "XOR(a,b)", "AND(a,,b)", "and(a,b)",
                          "OR(a,B)"}) {
    auto p = ParsePolicy(bad);
    EXPECT_FALSE(p.ok()) << bad;
    if (!p.ok()) {
      EXPECT_EQ(p.code(), ErrorCode::kSyntax) << bad;
    }
  }
  auto p = ParsePolicy("OR(a,B)");
  ASSERT_FALSE(p.ok());
  EXPECT_EQ(p.error().offset, 5u);
}

TEST(ParsePolicy, DuplicateAttributeRejected) {
  auto p = ParsePolicy("AND(a,OR(b,a))");
  ASSERT_FALSE(p.ok());
  EXPECT_EQ(p.code(), ErrorCode::kDuplicateAttribute);
  EXPECT_EQ(p.error().offset, 11u);
  auto built = CompilePolicy(Policy::Or(Policy::Leaf("x"), Policy::Leaf("x")));
  ASSERT_FALSE(built.ok());
  EXPECT_EQ(built.code(), ErrorCode::kDuplicateAttribute);
}

TEST(ParsePolicy, DeepNestingIsBounded) {
  std::string deep;
  for (int i = 0; i < 1000; ++i) deep += "AND(a" + std::to_string(i) + ",";
  deep += "z";
  for (int i = 0; i < 1000; ++i) deep += ")";
  EXPECT_FALSE(ParsePolicy(deep).ok());
}

TEST(CanonicalPolicy, GrammarImage) {
  EXPECT_EQ(CanonicalPolicy(Policy::Leaf("att:a")), "att:a");
  const Policy p = Policy::And(Policy::Or(Policy::Leaf("a"), Policy::Leaf("b")),
                               Policy::Leaf("c"));
  EXPECT_EQ(CanonicalPolicy(p), "AND(OR(a,b),c)");
  const Bytes bytes = CanonicalPolicyBytes(p);
  EXPECT_EQ(std::string(bytes.begin(), bytes.end()), "AND(OR(a,b),c)");
}

TEST(CanonicalPolicy, RoundTripsRandomPolicies) {
  std::mt19937_64 gen(7);
  const auto pool = testing::Universe(10);
  for (int i = 0; i < 500; ++i) {
    const Policy p = testing::RandomPolicy(gen, pool, 10);
    const std::string text = CanonicalPolicy(p);
    auto back = ParsePolicy(text);
    ASSERT_TRUE(back.ok()) << text;
    EXPECT_EQ(*back, p);
    EXPECT_EQ(CanonicalPolicy(*back), text);
  }
}

TEST(CompilePolicy, SingleLeaf) {
  const AccessMatrix am = Compile("a");
  EXPECT_EQ(am.rows, Ints({{1}}));
  EXPECT_EQ(am.rho, std::vector<std::string>{"a"});
  EXPECT_EQ(am.columns, 1u);
}

TEST(CompilePolicy, Or) {
  const AccessMatrix am = Compile("OR(a,b)");
  EXPECT_EQ(am.rows, Ints({{1}, {1}}));
  EXPECT_EQ(am.rho, (std::vector<std::string>{"a", "b"}));
  const std::vector<std::string> pool{"a", "b"};
  for (uint32_t mask = 0; mask < 4; ++mask) {
    const AttributeSet s = testing::SubsetFromMask(pool, mask);
    EXPECT_EQ(SolvableModSmallPrime(am, s, 5), mask != 0);
  }
}

TEST(CompilePolicy, And) {
  const AccessMatrix am = Compile("AND(a,b)");
  EXPECT_EQ(am.rows, Ints({{1, 1}, {0, -1}}));
  EXPECT_EQ(am.rho, (std::vector<std::string>{"a", "b"}));
  const std::vector<std::string> pool{"a", "b"};
  for (uint32_t mask = 0; mask < 4; ++mask) {
    const AttributeSet s = testing::SubsetFromMask(pool, mask);
    EXPECT_EQ(SolvableModSmallPrime(am, s, 5), mask == 3);
  }
}

TEST(CompilePolicy, NestedConstruction) {
  // The counter grows with each AND; OR children share their parent's vector.
  const AccessMatrix am = Compile("AND(OR(a,AND(b,c)),d)");
  EXPECT_EQ(am.rows, Ints({{1, 1, 0}, {1, 1, 1}, {0, 0, -1}, {0, -1, 0}}));
  EXPECT_EQ(am.rho, (std::vector<std::string>{"a", "b", "c", "d"}));
}

TEST(CompilePolicy, ShapeBounds) {
  std::mt19937_64 gen(8);
  const auto pool = testing::Universe(12);
  for (int i = 0; i < 300; ++i) {
    const Policy p = testing::RandomPolicy(gen, pool, 12);
    auto am = CompilePolicy(p);
    ASSERT_TRUE(am.ok());
    EXPECT_EQ(am->row_count(), p.LeafCount());
    EXPECT_EQ(am->columns, 1 + p.AndCount());
    EXPECT_TRUE(ValidateAccessMatrix(*am).ok());
  }
}

TEST(ValidateAccessMatrix, RejectsBadShapes) {
  AccessMatrix am = Compile("AND(a,b)");
  AccessMatrix dup = am;
  dup.rho[1] = "a";
  EXPECT_FALSE(ValidateAccessMatrix(dup).ok());
  AccessMatrix ragged = am;
  ragged.rows[0].pop_back();
  EXPECT_FALSE(ValidateAccessMatrix(ragged).ok());
  EXPECT_FALSE(ValidateAccessMatrix(AccessMatrix{}).ok());
  AccessMatrix bad_name = am;
  bad_name.rho[0] = "Nope";
  EXPECT_FALSE(ValidateAccessMatrix(bad_name).ok());
}

TEST(SolveReconstruction, AndBothHeld) {
  const AccessMatrix am = Compile("AND(a,b)");
  auto omega = SolveReconstruction(am, {"a", "b"});
  ASSERT_TRUE(omega.has_value());
  EXPECT_EQ(*omega, (ReconstructionCoefficients{{0, Scalar::One()},
                                                {1, Scalar::One()}}));
  EXPECT_TRUE(CoefficientsReconstruct(am, {"a", "b"}, *omega));
}

TEST(SolveReconstruction, AndOneHeldIsAbsent) {
  const AccessMatrix am = Compile("AND(a,b)");
  EXPECT_FALSE(SolveReconstruction(am, {"a"}).has_value());
  EXPECT_FALSE(SolvableModSmallPrime(am, {"a"}, 3));
  EXPECT_FALSE(SolvableModSmallPrime(am, {"a"}, 7));
}

TEST(SolveReconstruction, OrPicksLowestRow) {
  const AccessMatrix am = Compile("OR(a,b)");
  auto omega = SolveReconstruction(am, {"a"});
  ASSERT_TRUE(omega.has_value());
  EXPECT_EQ(*omega, (ReconstructionCoefficients{{0, Scalar::One()}}));
  // Both held: the lowest-index pivot wins and the free row gets zero.
  auto both = SolveReconstruction(am, {"a", "b"});
  ASSERT_TRUE(both.has_value());
  EXPECT_EQ(*both, (ReconstructionCoefficients{{0, Scalar::One()}}));
}

TEST(SolveReconstruction, IgnoresUnrelatedAttributes) {
  const AccessMatrix am = Compile("AND(a,b)");
  EXPECT_FALSE(SolveReconstruction(am, {"a", "c", "d"}).has_value());
  EXPECT_FALSE(SolveReconstruction(am, {}).has_value());
}

TEST(SolveReconstruction, AgreesWithSmallPrimeSearch) {
  std::mt19937_64 gen(9);
  const auto pool = testing::Universe(5);
  for (int i = 0; i < 200; ++i) {
    const Policy p = testing::RandomPolicy(gen, pool, 5);
    auto am = CompilePolicy(p);
    ASSERT_TRUE(am.ok());
    const AttributeSet s = testing::SubsetFromMask(pool, gen() & 31);
    EXPECT_EQ(SolveReconstruction(*am, s).has_value(),
              SolvableModSmallPrime(*am, s, 5))
        << CanonicalPolicy(p);
  }
}

TEST(SolveReconstruction, ExhaustiveOracleEquivalence) {
  const std::vector<std::string> pool{"a", "b", "c", "d", "e"};
  size_t policies = 0;
  testing::EnumeratePolicies(pool, 3, [&](const Policy& p) {
    ++policies;
    auto am = CompilePolicy(p);
    ASSERT_TRUE(am.ok());
    for (uint32_t mask = 0; mask < 32; ++mask) {
      const AttributeSet s = testing::SubsetFromMask(pool, mask);
      const auto omega = SolveReconstruction(*am, s);
      ASSERT_EQ(omega.has_value(), Evaluate(p, s))
          << CanonicalPolicy(p) << " mask " << mask;
      if (omega) {
        ASSERT_TRUE(CoefficientsReconstruct(*am, s, *omega));
      }
    }
  });
  EXPECT_GT(policies, 10000u);
}

}  // namespace
}  // namespace cred
