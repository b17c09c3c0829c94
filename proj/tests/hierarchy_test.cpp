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


#include "nspoly/hierarchy.hpp"

#include <gtest/gtest.h>

namespace nspoly {
namespace {

bool member(NamedBox b, ModelSet m) { return membership(named_box(b), m).has_value(); }

TEST(Hierarchy, ColumnCounts) {
  EXPECT_EQ(deterministic_local_columns().size(), 64u);
  for (auto g : kBipartitions) {
    EXPECT_EQ(bipartite_signaling_columns(g).size(), 1024u) << name_of(g);
    EXPECT_EQ(ns2_columns(g).size(), 96u) << name_of(g);
  }
}

TEST(Hierarchy, ModelSetNames) {
  for (auto m : kModelSets) EXPECT_EQ(parse_model_set(name_of(m)), m);
  EXPECT_THROW(parse_model_set("XYZ"), std::invalid_argument);
}

TEST(Hierarchy, Memberships) {
  for (auto m : kModelSets) {
    EXPECT_TRUE(member(NamedBox::Det0, m)) << name_of(m);
    EXPECT_TRUE(membership(Box::uniform(), m).has_value()) << name_of(m);
  }
  EXPECT_FALSE(member(NamedBox::PRBC, ModelSet::L));
  EXPECT_TRUE(member(NamedBox::PRBC, ModelSet::NS2));
  EXPECT_TRUE(member(NamedBox::PRBC, ModelSet::S2));
  for (auto m : kModelSets) EXPECT_FALSE(member(NamedBox::Box46, m)) << name_of(m);
}

TEST(Hierarchy, CertificatesReconstructTheBox) {
  for (auto [k, name] : kNamedBoxes) {
    const Box b = named_box(k);
    for (auto m : kModelSets) {
      const auto cert = membership(b, m);
      if (!cert) continue;
      EXPECT_TRUE(check_certificate(*cert, b.table())) << name << " " << name_of(m);
      EXPECT_FALSE(check_certificate(*cert, Box::uniform().table()) && b != Box::uniform());
    }
  }
}

TEST(Hierarchy, TamperedCertificateIsRejected) {
  auto cert = membership(named_box(NamedBox::PRBC), ModelSet::NS2);
  ASSERT_TRUE(cert);
  ASSERT_FALSE(cert->weights.empty());
  cert->weights.front().weight += Rational(1, 7);
  EXPECT_FALSE(check_certificate(*cert, named_box(NamedBox::PRBC).table()));
}

TEST(Hierarchy, NoiseResistances) {
  EXPECT_EQ(noise_resistance(named_box(NamedBox::Det0), ModelSet::L), Rational(0));
  EXPECT_EQ(noise_resistance(named_box(NamedBox::PRBC), ModelSet::L), Rational(2, 3));
  EXPECT_EQ(noise_resistance(named_box(NamedBox::PRBC), ModelSet::NS2), Rational(0));
  for (auto m : kModelSets) EXPECT_EQ(noise_resistance(named_box(NamedBox::Box46), m), Rational(1, 2)) << name_of(m);
  const auto r = noise_resistance_with_certificate(named_box(NamedBox::Box46), ModelSet::S2);
  EXPECT_TRUE(check_certificate(r.certificate, noisy(named_box(NamedBox::Box46), r.q).table()));
}

TEST(Hierarchy, NestedModelsGiveOrderedResistances) {
  // L ⊆ US2 ⊆ KS2 ⊆ S2 and L ⊆ NS2 ⊆ S2, so resistances decrease along the chain.
  for (auto k : {NamedBox::Box3, NamedBox::Box44, NamedBox::Box45}) {
    const auto rows = noise_table(std::vector<Box>{named_box(k)});
    const auto& r = rows.front();
    EXPECT_GE(r[0], r[1]);
    EXPECT_GE(r[0], r[2]);
    EXPECT_GE(r[2], r[3]);
    EXPECT_GE(r[3], r[4]);
    EXPECT_GE(r[1], r[4]);
  }
}

TEST(Hierarchy, PaperOrderSortsByLastColumnFirst) {
  std::vector<NoiseRow> rows(3);
  rows[0] = {Rational(1, 2), Rational(0), Rational(0), Rational(0), Rational(1, 3)};
  rows[1] = {Rational(2, 3), Rational(0), Rational(0), Rational(0), Rational(0)};
  rows[2] = {Rational(1, 2), Rational(0), Rational(0), Rational(0), Rational(0)};
  EXPECT_EQ(paper_order(rows), (std::vector<std::size_t>{2, 1, 0}));
  rows[1] = rows[2];
  EXPECT_EQ(tied_groups(rows, paper_order(rows)).size(), 1u);
}

}  // namespace
}  // namespace nspoly
