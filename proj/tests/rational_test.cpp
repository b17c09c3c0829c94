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


#include "nspoly/rational.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

namespace nspoly {
namespace {

TEST(Rational, ReducesToCanonicalForm) {
  EXPECT_EQ(Rational(2, 4).str(), "1/2");
  EXPECT_EQ(Rational(-3, -6).str(), "1/2");
  EXPECT_EQ(Rational(0, 7).str(), "0");
  EXPECT_EQ(Rational(0, 7).denominator(), 1);
  EXPECT_EQ(Rational(3, -9).str(), "-1/3");
}

TEST(Rational, ZeroDenominatorIsAnError) {
  try {
    (void)Rational(1, 0);
    FAIL() << "no exception";
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "division by zero");
  }
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_THROW(Rational::parse("3/0"), std::domain_error);
}

TEST(Rational, ParsesAndPrints) {
  for (const char* s : {"0", "2/3", "-4/37", "123456789012345678901234567891/7"})
    EXPECT_EQ(Rational::parse(s).str(), s);
  EXPECT_EQ(Rational::parse("+6/4").str(), "3/2");
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
}

TEST(Rational, OverflowPromotesToArbitraryPrecision) {
  Rational big(std::int64_t{1} << 62);
  Rational sq = big * big;
  EXPECT_EQ(sq.str(), "21267647932558653966460912964485513216");
  EXPECT_EQ(sq / big, big);
  EXPECT_TRUE((sq / big).is_small());
  Rational tiny(1, std::int64_t{1} << 62);
  EXPECT_EQ(tiny * tiny * sq, Rational(1));
}

TEST(Rational, OrderingAndHashingAgreeAcrossRepresentations) {
  const Rational a(1, 3);
  const Rational b = Rational::parse("100000000000000000000000000000") / Rational::parse("300000000000000000000000000000");
  EXPECT_EQ(a, b);
  EXPECT_EQ(RationalHash{}(a), RationalHash{}(b));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(abs(Rational(-2, 5)), Rational(2, 5));
  EXPECT_EQ(Rational(5, 2).reciprocal(), Rational(2, 5));
}

TEST(Rational, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000'000'000LL, 1'000'000'000'000LL);
  std::uniform_int_distribution<std::int64_t> den(1, 1'000'000'000'000LL);
  for (int i = 0; i < 500; ++i) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a - b) + b, a);
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

}  // namespace
}  // namespace nspoly
