/*
 * Copyright 2026 The frobetti Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include "frobetti/hk.hpp"
#include "frobetti/invsys.hpp"

using namespace frobetti;

TEST(HKFormula, Arithmetic) {
  EXPECT_EQ(hk_formula(4, 7), Rational(142));
  EXPECT_EQ(hk_formula(4, 49), Rational(7198));
  EXPECT_EQ(hk_formula(4, 25), Rational(1870));
  EXPECT_EQ(hk_formula(1, 5), Rational(75, 4));
}

TEST(HKDirect, CompressedQuartics) {
  HomogPoly f = parse_poly("x*y^3+y*z^3+z*x^3", Prime(7), 3);
  HKReport r = hk_direct(f, 7);
  EXPECT_EQ(r.direct, 142);
  EXPECT_TRUE(r.formula_applies);
  EXPECT_EQ(*r.formula, Rational(142));
  std::int64_t sum = 0;
  for (auto v : r.profile) sum += v;
  EXPECT_EQ(sum, r.direct);
  HomogPoly g = parse_poly("x^3*y-x*y^3+x^3*z-x*z^3-y*z^3", Prime(5), 3);
  EXPECT_EQ(hk_direct(g, 25).direct, 1870);
}

TEST(HKDirect, SameParityHasNoFormula) {
  HomogPoly f = parse_poly("x*y^2+y*z^2+z*x^2", Prime(5), 3);
  HKReport r = hk_direct(f, 25);
  EXPECT_FALSE(r.opposite_parity);
  EXPECT_FALSE(r.formula_applies);
  EXPECT_FALSE(r.formula.has_value());
}

TEST(HKDirect, QuadraticInQOnCompressedInstances) {
  // two Frobenius powers fix the quadratic; no linear term
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    SearchResult r = random_compressed_search(Prime(5), 3, 2, 25, seed, 20);
    ASSERT_TRUE(r.f.has_value());
    EXPECT_EQ(Rational(hk_direct(*r.f, 25).direct), hk_formula(2, 25));
  }
}

TEST(SeriesCheck, Verdicts) {
  HomogPoly f = parse_poly("x*y^3+y*z^3+z*x^3", Prime(7), 3);
  SeriesCheck c = hilbert_series_check(f, 7);
  EXPECT_EQ(c.verdict, SeriesVerdict::True);
  EXPECT_EQ(c.measured, c.expected);
  HomogPoly diag = parse_poly("x^4+y^4+z^4", Prime(5), 3);
  EXPECT_EQ(hilbert_series_check(diag, 25).verdict, SeriesVerdict::Inapplicable);
  HomogPoly sextic = parse_poly("x^5*y+y^5*z+z^5*x", Prime(7), 3);
  EXPECT_EQ(hilbert_series_check(sextic, 7).verdict, SeriesVerdict::Inapplicable);  // q < d + 3
  EXPECT_EQ(to_string(SeriesVerdict::False), "false");
}
