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


#include "nspoly/facets.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "nspoly/scenario.hpp"

namespace nspoly {
namespace {

FacetCensus census_of(const BellInequality& ineq) {
  std::set<CanonicalInequality> all;
  const auto c = canonical_inequality(ineq.functional, ineq.bound);
  for (const auto& g : all_relabelings()) all.insert(apply(g, c));
  return facet_classes({all.begin(), all.end()});
}

TEST(Facets, LocalBounds) {
  EXPECT_EQ(local_bound(mermin_functional()), Rational(2));
  EXPECT_EQ(local_bound(svetlichny_functional()), Rational(4));
  EXPECT_EQ(local_bound(gyni_functional()), Rational(1, 4));
  EXPECT_EQ(local_bound(chsh_functional()), Rational(2));
  EXPECT_EQ(local_bound(lifted_chsh_functional()), Rational(0));
}

TEST(Facets, BipartiteLocalPolytope) {
  const auto facets = local_polytope_facets(2);
  ASSERT_EQ(facets.size(), 24u);
  const auto ns = enumerate_vertices(scenario::no_signaling_hrep(2)).vertices;
  std::size_t violated = 0;
  for (const auto& f : facets) {
    bool v = false;
    for (const auto& p : ns) {
      Rational s;
      for (std::size_t i = 0; i < 16; ++i) s += Rational(f[i]) * p[i];
      v = v || s > Rational(f[16]);
    }
    violated += v;
  }
  EXPECT_EQ(violated, 8u);
}

TEST(Facets, CanonicalFormIgnoresGaugeAndScale) {
  const auto m = canonical_inequality(mermin_functional(), Rational(2));
  BellFunctional scaled = mermin_functional();
  for (auto& c : scaled.coefficients) c *= Rational(3);
  EXPECT_EQ(canonical_inequality(scaled, Rational(6)), m);
  // Adding a multiple of a normalization row shifts both sides equally.
  BellFunctional shifted = mermin_functional();
  for (unsigned out = 0; out < 8; ++out) shifted.coefficients[8 * 5 + out] += Rational(5, 2);
  EXPECT_EQ(canonical_inequality(shifted, Rational(2) + Rational(5, 2)), m);
  // Gauge change through a no-signaling row.
  EXPECT_EQ(canonical_inequality(symmetric_gauge(gyni_functional()), Rational(1, 4)),
            canonical_inequality(gyni_functional(), Rational(1, 4)));
}

TEST(Facets, CanonicalFormCommutesWithRelabeling) {
  const BellInequality m{lifted_chsh_functional(), Rational(0)};
  const auto c = canonical_inequality(m.functional, m.bound);
  const auto& group = all_relabelings();
  for (std::size_t i = 0; i < group.size(); i += 61) {
    const auto g = apply_to_inequality(group[i], m);
    EXPECT_EQ(canonical_inequality(g.functional, g.bound), apply(group[i], c));
  }
}

TEST(Facets, NamedClassesAreFound) {
  for (const auto& [name, ineq] : named_inequalities()) {
    const auto census = census_of(ineq);
    ASSERT_EQ(census.classes.size(), 1u);
    EXPECT_EQ(census.find(name), std::optional<std::size_t>(0)) << name_of(name);
  }
  EXPECT_EQ(census_of({mermin_functional(), Rational(2)}).facets.size(), 16u);
}

TEST(Facets, BoundaryCategories) {
  const auto census = census_of({mermin_functional(), Rational(2)});
  const auto b46 = noise_to_class_boundary(named_box(NamedBox::Box46).table(), census, 0);
  EXPECT_EQ(b46.category, BoundaryCategory::Violates);
  EXPECT_EQ(b46.value, Rational(1, 2));
  const auto det = noise_to_class_boundary(named_box(NamedBox::Det0).table(), census, 0);
  EXPECT_EQ(det.category, BoundaryCategory::Tight);
  const auto u = noise_to_class_boundary(Box::uniform().table(), census, 0);
  EXPECT_EQ(u.category, BoundaryCategory::Interior);
  EXPECT_EQ(u.value, Rational(-1));

  const std::vector<Table> boxes{named_box(NamedBox::Box46).table(), Box::uniform().table()};
  const auto best = best_inequality_per_class(boundary_table(boxes, census));
  ASSERT_EQ(best.size(), 2u);
  EXPECT_EQ(best[0].threshold, Rational(1, 2));
  EXPECT_EQ(best[0].ineq_classes, (std::vector<std::size_t>{0}));
  EXPECT_FALSE(best[1].threshold);
}

TEST(Facets, NoSignalingMaximum) {
  std::vector<Table> pts;
  for (auto k : {NamedBox::Det0, NamedBox::PRBC, NamedBox::Box44, NamedBox::Box46})
    pts.push_back(named_box(k).table());
  const ClassTable ct = orbit_partition_tables(pts);
  const auto rec = ns_max(mermin_functional(), pts, ct);
  EXPECT_EQ(rec.ns_max, Rational(4));
  EXPECT_EQ(rec.local_bound, Rational(2));
  EXPECT_EQ(rec.maximizers, 3u);  // PR-BC also reaches 4

  // The class representative is one orbit member, so evaluate it on whole orbits.
  std::vector<Table> orbits;
  for (auto k : {NamedBox::Det0, NamedBox::PRBC, NamedBox::Box46})
    for (const auto& t : orbit(named_box(k).table())) orbits.push_back(t);
  const ClassTable oc = orbit_partition_tables(orbits);
  const auto census = census_of({mermin_functional(), Rational(2)});
  const auto cv = class_violation(census, 0, ScaledPoints(orbits), oc);
  EXPECT_GT(cv.ns_max, cv.local_bound);
  EXPECT_EQ(cv.achieving_classes.size(), 2u);
  EXPECT_EQ(std::count(cv.achieving_classes.begin(), cv.achieving_classes.end(), oc.class_of.front()), 0);
  const auto counts = attaining_counts(mermin_functional(), Rational(4), pts, ct);
  std::size_t total = 0;
  for (auto c : counts) total += c;
  EXPECT_EQ(total, 3u);
}

}  // namespace
}  // namespace nspoly
