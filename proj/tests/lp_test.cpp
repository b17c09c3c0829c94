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


#include "nspoly/lp.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "nspoly/box.hpp"
#include "nspoly/hierarchy.hpp"

namespace nspoly {
namespace {

TEST(Lp, MaximizeBoundedVariable) {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.sense = Sense::Maximize;
  lp.objective = {Rational(1)};
  lp.ineq = {{Rational(-1)}};
  lp.ineq_rhs = {Rational(-3)};
  for (bool fs : {true, false}) {
    const auto r = lp_solve(lp, {fs});
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(*r.value, Rational(3));
    EXPECT_EQ((*r.point)[0], Rational(3));
  }
}

TEST(Lp, Infeasible) {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.lower = {std::nullopt};
  lp.ineq = {{Rational(1)}, {Rational(-1)}};
  lp.ineq_rhs = {Rational(1), Rational(0)};
  for (bool fs : {true, false}) EXPECT_EQ(lp_solve(lp, {fs}).status, LpStatus::Infeasible);
}

TEST(Lp, Unbounded) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.sense = Sense::Maximize;
  lp.objective = {Rational(1), Rational(1)};
  lp.ineq = {{Rational(1), Rational(-1)}};
  lp.ineq_rhs = {Rational(0)};
  for (bool fs : {true, false}) EXPECT_EQ(lp_solve(lp, {fs}).status, LpStatus::Unbounded);
}

TEST(Lp, FreeVariablesAndLowerBounds) {
  // min x + y s.t. x - y = 1/2, x >= -3, y free, y >= -7/3 as a row.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rational(1), Rational(1)};
  lp.eq = {{Rational(1), Rational(-1)}};
  lp.eq_rhs = {Rational(1, 2)};
  lp.ineq = {{Rational(0), Rational(1)}};
  lp.ineq_rhs = {Rational(-7, 3)};
  lp.lower = {Rational(-3), std::nullopt};
  const auto r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(*r.value, Rational(-25, 6));
}

TEST(Lp, RejectsInconsistentDimensions) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.eq = {{Rational(1)}};
  lp.eq_rhs = {Rational(1)};
  EXPECT_THROW(lp_solve(lp), std::invalid_argument);
}

TEST(Lp, PrBoxLocalNoiseResistance) {
  const Box pr = named_box(NamedBox::PRBC);
  const auto layout = hierarchy_detail::build(hierarchy_detail::cached_terms(ModelSet::L), pr.table(), true);
  for (bool fs : {true, false}) {
    const auto r = lp_solve(layout.lp, {fs});
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(*r.value, Rational(2, 3));
  }
}

LinearProgram random_lp(std::mt19937& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<int> v(-4, 6);
  LinearProgram lp;
  lp.num_vars = n;
  lp.sense = Sense::Maximize;
  for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(Rational(v(rng)));
  // -A x >= -b with A >= 0 and b > 0 keeps the problem feasible and bounded.
  std::uniform_int_distribution<int> a(1, 5);
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector row(n);
    for (auto& x : row) x = Rational(-a(rng));
    lp.ineq.push_back(row);
    lp.ineq_rhs.push_back(Rational(-a(rng) * 3));
  }
  return lp;
}

TEST(Lp, WeakDualityOnRandomPrograms) {
  // max c.x s.t. A x <= b, x >= 0; any y >= 0 with A^T y >= c bounds it by b.y.
  std::mt19937 rng(5);
  for (int t = 0; t < 25; ++t) {
    const auto primal = random_lp(rng, 4, 6);
    const auto p = lp_solve(primal);
    ASSERT_EQ(p.status, LpStatus::Optimal);
    LinearProgram dual;
    dual.num_vars = 4;
    dual.objective.resize(4);
    for (std::size_t i = 0; i < 4; ++i) dual.objective[i] = -primal.ineq_rhs[i];
    for (std::size_t j = 0; j < 6; ++j) {
      RationalVector row(4);
      for (std::size_t i = 0; i < 4; ++i) row[i] = -primal.ineq[i][j];
      dual.ineq.push_back(row);
      dual.ineq_rhs.push_back(primal.objective[j]);
    }
    const auto d = lp_solve(dual);
    ASSERT_EQ(d.status, LpStatus::Optimal);
    EXPECT_LE(*p.value, *d.value);
    EXPECT_EQ(*p.value, *d.value);  // strong duality holds for exact optima
    // Any scaled-up dual point is feasible and still a bound.
    RationalVector y = *d.point;
    for (auto& v : y) v = v * Rational(3, 2) + Rational(1);
    Rational bound;
    for (std::size_t i = 0; i < 4; ++i) bound += -primal.ineq_rhs[i] * y[i];
    EXPECT_LE(*p.value, bound);
  }
}

TEST(Lp, ValueIsInvariantUnderVariablePermutation) {
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    const auto lp = random_lp(rng, 5, 8);
    const auto base = lp_solve(lp);
    std::vector<std::size_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    LinearProgram q = lp;
    for (std::size_t j = 0; j < 8; ++j) q.objective[perm[j]] = lp.objective[j];
    for (std::size_t i = 0; i < lp.ineq.size(); ++i)
      for (std::size_t j = 0; j < 8; ++j) q.ineq[i][perm[j]] = lp.ineq[i][j];
    EXPECT_EQ(lp_solve(q).value, base.value);
    EXPECT_EQ(lp_solve(q, {false}).value, base.value);
  }
}

TEST(Lp, DegenerateProgramTerminates) {
  // A classic cycling example for the textbook rule.
  LinearProgram lp;
  lp.num_vars = 4;
  lp.sense = Sense::Maximize;
  lp.objective = {Rational(10), Rational(-57), Rational(-9), Rational(-24)};
  lp.ineq = {{Rational(-1, 2), Rational(11, 2), Rational(5, 2), Rational(-9)},
             {Rational(-1, 2), Rational(3, 2), Rational(1, 2), Rational(-1)},
             {Rational(-1), Rational(0), Rational(0), Rational(0)}};
  lp.ineq_rhs = {Rational(0), Rational(0), Rational(-1)};
  for (bool fs : {true, false}) {
    const auto r = lp_solve(lp, {fs});
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(*r.value, Rational(1));
  }
}

}  // namespace
}  // namespace nspoly
