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

#include "frobetti/resolution.hpp"

using namespace frobetti;

namespace {

HomogPoly klein7() { return parse_poly("x*y^3+y*z^3+z*x^3", Prime(7), 3); }

}  // namespace

TEST(BettiTable, TextAndJsonRoundTrip) {
  BettiTable t(RingTag::R, 2);
  t.set(0, 0, 1);
  t.set(1, 3, 2);
  t.set(2, 5, 1);
  EXPECT_EQ(t.to_text(), "       0 1 2\ntotal: 1 2 1\n    0: 1 . .\n    2: . 2 .\n    3: . . 1\n");
  EXPECT_EQ(BettiTable::from_json(t.to_json()), t);
  EXPECT_EQ(BettiTable::from_text(t.to_text(), RingTag::R), t);
  EXPECT_EQ(t.twists(1), (std::vector<int>{3, 3}));
}

TEST(OverP, KoszulWhenFIsZero) {
  BettiTable t = betti_over_P(HomogPoly(Prime(5), 3, 2), 5);
  EXPECT_EQ(t.twists(1), (std::vector<int>{5, 5, 5}));
  EXPECT_EQ(t.twists(2), (std::vector<int>{10, 10, 10}));
  EXPECT_EQ(t.twists(3), (std::vector<int>{15}));
}

TEST(OverP, CompressedQuartic) {
  BettiTable t = betti_over_P(klein7(), 7);
  EXPECT_EQ(t.twists(1), (std::vector<int>{4, 7, 7, 7}));
  std::vector<int> two(3, 11);
  two.insert(two.end(), 8, 12);
  EXPECT_EQ(t.twists(2), two);
  EXPECT_EQ(t.twists(3), std::vector<int>(8, 13));
}

TEST(OverP, TorShortcutMatchesEngine) {
  for (const char* f : {"x*y^3+y*z^3+z*x^3", "x^4+y^4+z^4", "x^2*y+z^3"}) {
    HomogPoly g = parse_poly(f, Prime(7), 3);
    Resolution res = resolve_over_P(g, 7);
    EXPECT_EQ(res.betti, betti_over_P(g, 7)) << f;
    EXPECT_TRUE(audit_resolution(res, g).ok()) << f;
  }
}

TEST(OverR, KleinQuarticGridAndTail) {
  Resolution res = resolve_over_R(klein7(), 7, 4);
  EXPECT_EQ(res.betti.to_text(),
            "       0 1 2 3 4\n"
            "total: 1 3 8 8 8\n"
            "    0: 1 . . . .\n"
            "    6: . 3 . . .\n"
            "   10: . . 8 8 .\n"
            "   12: . . . . 8\n");
  EXPECT_TRUE(audit_resolution(res, klein7()).ok());
  TailInfo tail = detect_periodic_tail(res.betti);
  ASSERT_TRUE(tail.found);
  EXPECT_EQ(tail.start, 2);
  EXPECT_EQ(tail.rank, 8);
  EXPECT_EQ(tail.period_shift, 4);
  EXPECT_EQ(tail.gaps, std::make_optional(std::make_pair(1, 3)));
}

TEST(OverR, FiniteProjectiveDimension) {
  HomogPoly diag = parse_poly("x^4+y^4+z^4", Prime(5), 3);
  BettiTable t = betti_over_R(diag, 25, 4);
  EXPECT_EQ(t.total(2), 2);
  EXPECT_EQ(t.total(3), 0);
  EXPECT_FALSE(detect_periodic_tail(t).found);
  EXPECT_THROW(extract_tail_mf(diag, 25, 3), PreconditionError);
}

TEST(OverR, CapAgreesWithBoundedScan) {
  HomogPoly f = parse_poly("x*y^2+y*z^2+z*x^2", Prime(5), 3);
  EXPECT_EQ(betti_over_R(f, 5, 5, 0), betti_over_R(f, 5, 5));
  EXPECT_EQ(betti_over_R(klein7(), 7, 4, 0), betti_over_R(klein7(), 7, 4));
}

TEST(OverR, ThreadCountDoesNotChangeResult) {
  const int saved = thread_limit();
  set_thread_limit(1);
  BettiTable one = betti_over_R(klein7(), 7, 4);
  set_thread_limit(4);
  BettiTable four = betti_over_R(klein7(), 7, 4);
  set_thread_limit(saved);
  EXPECT_EQ(one, four);
}

TEST(Tails, ShiftBetweenFrobeniusPowers) {
  TailComparison c = compare_tails(betti_over_R(klein7(), 7, 4), betti_over_R(klein7(), 49, 4));
  EXPECT_TRUE(c.equal);
  EXPECT_EQ(c.shift, 63);
  EXPECT_EQ(c.message, "tails equal after shift 63");
}

TEST(MatrixFactorization, LinearAndCubicPair) {
  MatrixFactorization mf = extract_tail_mf(klein7(), 7, 3);
  EXPECT_EQ(mf.a.rows(), 8u);
  EXPECT_EQ(mf.a_degree, 1);
  EXPECT_EQ(mf.b_degree, 3);
  EXPECT_TRUE(mf.a.entries_of_degree(1));
  PolyMatrix fi = PolyMatrix::scalar(SparsePoly::from_homog(klein7()), 8);
  EXPECT_EQ(mf.a * mf.b, fi);
  EXPECT_EQ(mf.b * mf.a, fi);
}
