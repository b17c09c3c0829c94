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


#include "nspoly/polytope.hpp"

#include <gtest/gtest.h>

#include <set>

#include "nspoly/box.hpp"
#include "nspoly/scenario.hpp"

namespace nspoly {
namespace {

HRepresentation cube(std::size_t d) {
  HRepresentation h;
  h.dimension = d;
  for (std::size_t i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      RationalVector row(d);
      row[i] = Rational(s);
      h.ineq.push_back(row);
      h.ineq_rhs.push_back(Rational(s == 1 ? 0 : -1));
    }
  return h;
}

std::set<IntegerVector> inequality_set(const HRepresentation& h) {
  std::set<IntegerVector> out;
  for (std::size_t i = 0; i < h.ineq.size(); ++i) {
    RationalVector row = h.ineq[i];
    row.push_back(h.ineq_rhs[i]);
    out.insert(positive_integer_scaling(row));
  }
  return out;
}

TEST(Polytope, CubeRoundTrip) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto h = cube(d);
    const auto v = enumerate_vertices(h);
    EXPECT_EQ(v.vertices.size(), std::size_t{1} << d);
    for (const auto& p : v.vertices)
      for (const auto& x : p) EXPECT_TRUE(x.is_zero() || x == Rational(1));
    const auto back = enumerate_facets(v);
    EXPECT_TRUE(back.eq.empty());
    EXPECT_EQ(inequality_set(back), inequality_set(h));
  }
}

TEST(Polytope, CrossPolytopeRoundTrip) {
  VRepresentation v;
  for (std::size_t i = 0; i < 3; ++i)
    for (int s : {1, -1}) {
      RationalVector p(3);
      p[i] = Rational(s);
      v.vertices.push_back(p);
    }
  const auto h = enumerate_facets(v);
  EXPECT_EQ(h.ineq.size(), 8u);
  const auto again = enumerate_vertices(h);
  EXPECT_EQ(std::set<RationalVector>(again.vertices.begin(), again.vertices.end()),
            std::set<RationalVector>(v.vertices.begin(), v.vertices.end()));
}

TEST(Polytope, LowerDimensionalHullKeepsEqualities) {
  // A triangle in the plane x + y + z = 1.
  VRepresentation v;
  v.vertices = {{Rational(1), Rational(0), Rational(0)},
                {Rational(0), Rational(1), Rational(0)},
                {Rational(0), Rational(0), Rational(1)}};
  const auto h = enumerate_facets(v);
  EXPECT_EQ(h.eq.size(), 1u);
  EXPECT_EQ(h.ineq.size(), 3u);
  EXPECT_EQ(enumerate_vertices(h).vertices.size(), 3u);
}

TEST(Polytope, BipartiteNoSignalingVertices) {
  const auto v = enumerate_vertices(scenario::no_signaling_hrep(2));
  EXPECT_EQ(v.vertices.size(), 24u);
  std::size_t deterministic = 0;
  for (const auto& p : v.vertices) {
    bool integral = true;
    for (const auto& x : p) integral = integral && x.is_integer();
    deterministic += integral;
  }
  EXPECT_EQ(deterministic, 16u);
  // The bipartite local polytope and its vertex set.
  VRepresentation local;
  local.vertices = scenario::deterministic_points(2);
  const auto h = enumerate_facets(local);
  const auto back = enumerate_vertices(h);
  EXPECT_EQ(back.vertices.size(), 16u);
}

TEST(Polytope, VertexTest) {
  const auto h = scenario::no_signaling_hrep(3);
  EXPECT_TRUE(is_vertex(named_box(NamedBox::Det0).vector(), h));
  EXPECT_TRUE(is_vertex(named_box(NamedBox::Box46).vector(), h));
  EXPECT_TRUE(is_vertex(named_box(NamedBox::Box3).vector(), h));
  EXPECT_TRUE(is_vertex(named_box(NamedBox::PRBC).vector(), h));
  EXPECT_FALSE(is_vertex(Box::uniform().vector(), h));
  EXPECT_FALSE(is_vertex(named_box(NamedBox::GHZ).vector(), h));
  RationalVector bad(64);
  EXPECT_THROW(is_vertex(bad, h), PolytopeError);
  EXPECT_THROW(is_vertex(RationalVector(3), h), std::invalid_argument);
}

TEST(Polytope, Errors) {
  EXPECT_THROW(enumerate_facets(VRepresentation{}), PolytopeError);
  HRepresentation h = cube(2);
  h.ineq_rhs.pop_back();
  EXPECT_THROW(enumerate_vertices(h), std::invalid_argument);
}

}  // namespace
}  // namespace nspoly
