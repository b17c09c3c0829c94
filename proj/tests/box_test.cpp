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


#include "nspoly/box.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "nspoly/scenario.hpp"

namespace nspoly {
namespace {

Box random_local_box(std::mt19937& rng) {
  const auto det = scenario::deterministic_points(3);
  std::uniform_int_distribution<std::size_t> pick(0, det.size() - 1);
  std::vector<Box> parts;
  std::vector<Rational> w;
  for (int k = 0; k < 4; ++k) {
    parts.push_back(Box::from_vector(det[pick(rng)]));
    w.push_back(Rational(1, 4));
  }
  return mix(parts, w);
}

TEST(Box, EntryIndexLayout) {
  EXPECT_EQ(entry_index(0, 0, 0, 0, 0, 0), 0u);
  EXPECT_EQ(entry_index(0, 0, 0, 0, 0, 1), 1u);
  EXPECT_EQ(entry_index(0, 0, 1, 0, 0, 0), 8u);
  EXPECT_EQ(entry_index(1, 1, 1, 1, 1, 1), 63u);
  EXPECT_EQ(entry_index(1, 0, 0, 0, 1, 0), 34u);
}

TEST(Box, CorrelatorRoundTrip) {
  std::mt19937 rng(1);
  for (int t = 0; t < 20; ++t) {
    const Box b = random_local_box(rng);
    const Correlators c = correlators_from_box(b);
    EXPECT_EQ(box_from_correlators(c), b);
    EXPECT_EQ(correlators_of_table(table_from_correlators(c)), c);
  }
  for (auto [k, name] : kNamedBoxes) {
    const Box b = named_box(k);
    EXPECT_EQ(box_from_correlators(correlators_from_box(b)), b) << name;
  }
}

TEST(Box, FullCorrelationPatterns) {
  const auto c44 = correlators_from_box(named_box(NamedBox::Box44));
  const auto c46 = correlators_from_box(named_box(NamedBox::Box46));
  for (std::size_t k = 0; k < 18; ++k) {
    EXPECT_TRUE(c44[k].is_zero());
    EXPECT_TRUE(c46[k].is_zero());
  }
  for (unsigned x = 0; x < 2; ++x)
    for (unsigned y = 0; y < 2; ++y)
      for (unsigned z = 0; z < 2; ++z) {
        EXPECT_EQ(c44.triple(x, y, z), Rational(x & y & z ? -1 : 1));
        EXPECT_EQ(c46.triple(x, y, z), Rational((x * y + x * z + y * z) % 2 ? -1 : 1));
      }
  // Outputs of a full-correlation box are uniform with fixed parity.
  const Box b = named_box(NamedBox::Box46);
  EXPECT_EQ(b.at(0, 0, 0, 0, 0, 0), Rational(1, 4));
  EXPECT_EQ(b.at(0, 0, 0, 1, 0, 0), Rational(0));
  EXPECT_EQ(b.at(1, 1, 1, 1, 0, 0), Rational(1, 4));
}

TEST(Box, NamedLookup) {
  EXPECT_EQ(named_box("PR-BC"), named_box(NamedBox::PRBC));
  EXPECT_THROW(named_box("nope"), std::invalid_argument);
  EXPECT_EQ(name_of(NamedBox::Box46Prime), "Box46Prime");
}

TEST(Box, ValidationReportsEachFamily) {
  Table t = named_box(NamedBox::Det0).table();
  EXPECT_TRUE(validate(t).valid());

  Table neg = t;
  neg[0] = Rational(-1);
  neg[1] = Rational(2);
  const auto r1 = validate(neg);
  EXPECT_TRUE(r1.has_family("positivity"));
  EXPECT_FALSE(r1.has_family("normalization"));

  Table unnorm = t;
  unnorm[0] = Rational(1, 2);
  const auto r2 = validate(unnorm);
  EXPECT_TRUE(r2.has_family("normalization"));

  // B's output follows A's input.
  Table sig{};
  for (unsigned x = 0; x < 2; ++x)
    for (unsigned y = 0; y < 2; ++y)
      for (unsigned z = 0; z < 2; ++z) sig[entry_index(x, y, z, 0, x, 0)] = Rational(1);
  const auto r3 = validate(sig);
  EXPECT_TRUE(r3.has_family("no-signaling(A->BC)"));
  EXPECT_FALSE(r3.has_family("no-signaling(B->CA)"));
  EXPECT_FALSE(r3.has_family("no-signaling(C->AB)"));
  EXPECT_FALSE(r3.has_family("positivity"));
  try {
    Box::from_table(sig);
    FAIL() << "no exception";
  } catch (const InvalidBehavior& e) {
    EXPECT_FALSE(e.report().valid());
  }
}

TEST(Box, MixAndNoiseArguments) {
  const Box a = named_box(NamedBox::Det0), u = Box::uniform();
  const std::vector<Box> boxes{a, u};
  EXPECT_THROW(mix(boxes, std::vector<Rational>{Rational(1, 2)}), std::invalid_argument);
  EXPECT_THROW(mix(boxes, std::vector<Rational>{Rational(3, 2), Rational(-1, 2)}), std::invalid_argument);
  EXPECT_THROW(mix(boxes, std::vector<Rational>{Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
  EXPECT_EQ(mix(boxes, std::vector<Rational>{Rational(2, 3), Rational(1, 3)}), noisy(a, Rational(1, 3)));
  EXPECT_THROW(noisy(a, Rational(-1)), std::invalid_argument);
  EXPECT_THROW(noisy(a, Rational(2)), std::invalid_argument);
  EXPECT_EQ(noisy(a, Rational(1)), u);
  EXPECT_EQ(noisy(a, Rational(0)), a);
}

TEST(Box, ClosedFormFunctionals) {
  EXPECT_EQ(evaluate(mermin_functional(), named_box(NamedBox::GHZ)), Rational(4));
  EXPECT_EQ(evaluate(mermin_functional(), named_box(NamedBox::Box44)), Rational(4));
  EXPECT_EQ(evaluate(svetlichny_functional(), named_box(NamedBox::Box46)), Rational(8));
  EXPECT_EQ(evaluate(svetlichny_functional(), named_box(NamedBox::Box46Prime)), Rational(0));
  EXPECT_EQ(evaluate(chsh_functional(), named_box(NamedBox::Det0)), Rational(2));
  EXPECT_EQ(evaluate(mermin_functional(), Box::uniform()), Rational(0));
  EXPECT_EQ(evaluate(gyni_functional(), Box::uniform()), Rational(1, 8));
}

TEST(Box, FunctionalsAreAffineInTheBox) {
  std::mt19937 rng(2);
  const std::vector<BellFunctional> fs{mermin_functional(), svetlichny_functional(), gyni_functional(),
                                       chsh_functional()};
  for (int t = 0; t < 10; ++t) {
    const Box a = random_local_box(rng), b = named_box(NamedBox::Box46);
    const Rational w(t + 1, 13);
    const std::vector<Box> boxes{a, b};
    const Box m = mix(boxes, std::vector<Rational>{w, Rational(1) - w});
    for (const auto& f : fs) EXPECT_EQ(evaluate(f, m), w * evaluate(f, a) + (Rational(1) - w) * evaluate(f, b));
  }
}

TEST(Box, SymmetricGaugeAgreesOnNoSignalingBoxes) {
  std::mt19937 rng(4);
  const BellFunctional g = gyni_functional(), s = symmetric_gauge(g);
  for (int t = 0; t < 10; ++t) {
    const Box b = random_local_box(rng);
    EXPECT_EQ(evaluate(g, b), evaluate(s, b));
  }
  EXPECT_EQ(evaluate(g, named_box(NamedBox::Box46)), evaluate(s, named_box(NamedBox::Box46)));
}

}  // namespace
}  // namespace nspoly
