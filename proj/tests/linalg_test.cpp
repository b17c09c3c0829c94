// Copyright 2026 The nspoly Authors
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


#include "nspoly/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

#include "nspoly/box.hpp"
#include "nspoly/scenario.hpp"

namespace nspoly {
namespace {

RationalMatrix identity(std::size_t n) {
  RationalMatrix m(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
  return m;
}

TEST(Linalg, Rank) {
  EXPECT_EQ(rank(identity(3)), 3u);
  EXPECT_EQ(rank(RationalMatrix(4, RationalVector(5))), 0u);
  EXPECT_EQ(rank(RationalMatrix{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}), 1u);
}

TEST(Linalg, TightConstraintsAtDeterministicBoxSpanTheAffineHull) {
  const auto h = scenario::no_signaling_hrep(3);
  const auto det = scenario::deterministic_points(3).front();
  RationalMatrix eq = h.eq;
  RationalMatrix active = h.eq;
  for (std::size_t i = 0; i < h.ineq.size(); ++i)
    if (dot(h.ineq[i], det) == h.ineq_rhs[i]) active.push_back(h.ineq[i]);
  EXPECT_EQ(rank(eq), 64u - 26u);
  EXPECT_EQ(rank(active) - rank(eq), 26u);
}

TEST(Linalg, RankOfTransposeOnRandomMatrices) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> v(-2, 2);
  for (std::size_t rows : {1u, 5u, 17u, 30u}) {
    RationalMatrix m(rows, RationalVector(64));
    for (auto& r : m)
      for (auto& x : r) x = Rational(v(rng), 1 + (v(rng) + 2));
    EXPECT_EQ(rank(m), rank(transpose(m)));
  }
}

TEST(Linalg, SolveLinear) {
  auto x = solve_linear(identity(2), {Rational(1, 2), Rational(1, 3)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (RationalVector{Rational(1, 2), Rational(1, 3)}));
  EXPECT_FALSE(solve_linear(RationalMatrix{{Rational(0)}}, {Rational(1)}));

  // Zero correlators give the uniform box; solving the correlator map recovers a preimage.
  const auto p = scenario::probabilities_from_correlators(3, RationalVector(26));
  for (const auto& v : p) EXPECT_EQ(v, Rational(1, 8));
  const RationalMatrix a = scenario::correlator_map(3);
  const RationalVector rhs = mat_vec(a, p);
  auto s = solve_linear(a, rhs);
  ASSERT_TRUE(s);
  EXPECT_EQ(mat_vec(a, *s), rhs);
}

TEST(Linalg, SolutionsSatisfyTheSystem) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int t = 0; t < 20; ++t) {
    RationalMatrix a(6, RationalVector(9));
    for (auto& r : a)
      for (auto& x : r) x = Rational(v(rng));
    RationalVector x0(9);
    for (auto& x : x0) x = Rational(v(rng), 2);
    const RationalVector b = mat_vec(a, x0);
    auto x = solve_linear(a, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(mat_vec(a, *x), b);
  }
}

TEST(Linalg, PrimitiveIntegerForm) {
  EXPECT_EQ(primitive_integer_form(RationalVector{Rational(1, 2), Rational(1, 3)}), (IntegerVector{3, 2}));
  EXPECT_EQ(primitive_integer_form(RationalVector{Rational(-2), Rational(-4)}), (IntegerVector{1, 2}));
  EXPECT_EQ(primitive_integer_form(RationalVector{Rational(0), Rational(5, 7)}), (IntegerVector{0, 1}));
  EXPECT_THROW(primitive_integer_form(RationalVector{Rational(0), Rational(0)}), std::invalid_argument);
  // Direction-preserving variant keeps the sign.
  EXPECT_EQ(positive_integer_scaling(RationalVector{Rational(-2), Rational(-4)}), (IntegerVector{-1, -2}));
}

TEST(Linalg, Nullspace) {
  const RationalMatrix a{{Rational(1), Rational(1), Rational(0)}, {Rational(0), Rational(1), Rational(1)}};
  const auto ns = nullspace(a, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& row : a) EXPECT_TRUE(dot(row, ns.front()).is_zero());
}

}  // namespace
}  // namespace nspoly
