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

#include "frobetti/invsys.hpp"
#include "frobetti/linkage.hpp"

using namespace frobetti;

namespace {

DividedElem sum_of_squares(Prime p) {
  return DividedElem::from_terms(p, 3, 2, {{Monomial({2, 0, 0}), 1}, {Monomial({0, 2, 0}), 1}, {Monomial({0, 0, 2}), 1}});
}

}  // namespace

TEST(Catalecticant, SumOfSquares) {
  Prime p(5);
  DividedElem phi = sum_of_squares(p);
  EXPECT_EQ(catalecticant(phi, 1), FMatrix::identity(p, 3));
  EXPECT_EQ(hilbert_function(phi), (std::vector<std::int64_t>{1, 3, 1}));
  FMatrix ann = ann_piece(phi, 2);
  EXPECT_EQ(ann.rows(), 5u);
  // xy, yz, xz, x^2 - y^2, x^2 - z^2 all lie in the span
  auto b = GradedBasis::get(3, 2);
  auto in_ann = [&](std::vector<std::pair<Monomial, std::int64_t>> terms) {
    std::vector<std::uint32_t> v(b->size());
    for (auto& [m, c] : terms) v[b->rank(m)] = p.reduce(c);
    return row_space_membership(ann, v);
  };
  EXPECT_TRUE(in_ann({{Monomial({1, 1, 0}), 1}}));
  EXPECT_TRUE(in_ann({{Monomial({0, 1, 1}), 1}}));
  EXPECT_TRUE(in_ann({{Monomial({1, 0, 1}), 1}}));
  EXPECT_TRUE(in_ann({{Monomial({2, 0, 0}), 1}, {Monomial({0, 2, 0}), -1}}));
  EXPECT_TRUE(in_ann({{Monomial({2, 0, 0}), 1}, {Monomial({0, 0, 2}), -1}}));
  EXPECT_FALSE(in_ann({{Monomial({2, 0, 0}), 1}}));
  EXPECT_EQ(ann_piece(phi, 0).rows(), 0u);
  EXPECT_EQ(ann_piece(phi, 3).rows(), basis_size(3, 3));
}

TEST(Catalecticant, PurePowerHilbertFunction) {
  Prime p(3);
  DividedElem phi = DividedElem::monomial(p, Monomial({2, 0, 0}));
  EXPECT_EQ(hilbert_function(phi), (std::vector<std::int64_t>{1, 1, 1}));
}

TEST(Catalecticant, DualityProperty) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SplitMix64 rng(seed);
    const int n = 1 + static_cast<int>(seed % 4), s = static_cast<int>(seed % 7);
    DividedElem phi = random_divided(Prime(seed % 2 ? 2 : 13), n, s, rng);
    for (int i = 0; i <= s; ++i) {
      EXPECT_EQ(catalecticant(phi, i), catalecticant(phi, s - i).transpose());
      EXPECT_EQ(catalecticant_rank(phi, i), rank(catalecticant(phi, i)));
    }
  }
}

TEST(DPrime, EndpointsAndCompressedMiddle) {
  Prime p(7);
  HomogPoly f = parse_poly("x*y^3+y*z^3+z*x^3", p, 3);
  DividedElem phi = link_inverse_poly(f, 7);
  const int s = phi.degree();
  EXPECT_EQ(dprime_basis(phi, 0).rows(), 1u);
  EXPECT_EQ(dprime_basis(phi, s).rows(), 1u);
  // in the middle, D'_{s-m} is spanned by the divided monomials with exponents below q
  const int m = (s + 1) / 2;
  EXPECT_EQ(static_cast<std::int64_t>(dprime_basis(phi, m).rows()), ci_hilbert(3, 7, s - m));
}

TEST(CiHilbert, SumsToVolume) {
  std::int64_t total = 0;
  for (int j = 0; j <= 8; ++j) total += ci_hilbert(2, 5, j);
  EXPECT_EQ(total, 25);
  EXPECT_EQ(ci_hilbert(3, 7, 0), 1);
  EXPECT_EQ(ci_hilbert(3, 7, 19), 0);
}

TEST(Compressed, KnownInstances) {
  EXPECT_TRUE(is_relatively_compressed(parse_poly("x^3*y-x*y^3+x^3*z-x*z^3-y*z^3", Prime(5), 3), 25, CheckMode::Quick).compressed);
  EXPECT_FALSE(is_relatively_compressed(parse_poly("x^4+y^4+z^4", Prime(7), 3), 7, CheckMode::Quick).compressed);
  EXPECT_TRUE(is_relatively_compressed(parse_poly("x*y^2+y*z^2+z*x^2", Prime(5), 3), 25, CheckMode::Full).compressed);
}

TEST(Compressed, QuickAgreesWithFull) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    SplitMix64 rng(seed);
    const Prime p(seed % 3 == 0 ? 2 : 7);
    HomogPoly f = random_form(p, 3, 2 + static_cast<int>(seed % 3), rng);
    if (f.is_zero()) continue;
    EXPECT_EQ(is_relatively_compressed(f, 8, CheckMode::Quick).compressed,
              is_relatively_compressed(f, 8, CheckMode::Full).compressed)
        << format_poly(f);
  }
}

TEST(Compressed, Preconditions) {
  HomogPoly f = parse_poly("x^4+y^4+z^4", Prime(5), 3);
  EXPECT_THROW(is_relatively_compressed(f, 4, CheckMode::Quick), PreconditionError);
  CompressedReport r = is_relatively_compressed(f, 6, CheckMode::Quick);
  EXPECT_FALSE(r.warnings.empty());  // 6 is not a power of 5
}

TEST(Sampler, FindsCompressedQuartic) {
  SearchResult r = random_compressed_search(Prime(7), 3, 4, 7, 1, 20);
  ASSERT_TRUE(r.f.has_value());
  EXPECT_GE(r.attempts, 1);
  EXPECT_TRUE(is_relatively_compressed(*r.f, 7, CheckMode::Full).compressed);
  EXPECT_FALSE(random_compressed_search(Prime(7), 3, 4, 7, 1, 0).f.has_value());
  EXPECT_THROW(random_compressed_search(Prime(7), 3, 7, 7, 1, 5), PreconditionError);
}

TEST(Sampler, Deterministic) {
  SplitMix64 a(42), b(42);
  EXPECT_EQ(random_form(Prime(11), 3, 5, a), random_form(Prime(11), 3, 5, b));
}

TEST(PowerOf, Basic) {
  EXPECT_TRUE(is_power_of(125, 5));
  EXPECT_FALSE(is_power_of(1, 5));
  EXPECT_FALSE(is_power_of(50, 5));
}
