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
#include "frobetti/koszul.hpp"
#include "frobetti/linkage.hpp"

using namespace frobetti;

namespace {

// dim C_{i,j} from explicit strand matrices: kernel of eta' on Λ^i ⊗ D'_j minus the image
// of Λ^{i+1} ⊗ D'_{j+1}.
std::int64_t c_rank_oracle(const DividedElem& phi, int i, int j) {
  const Prime p = phi.prime();
  const int n = phi.num_vars(), s = phi.degree();
  const std::int64_t dim = binom(n, i) * static_cast<std::int64_t>(dprime_basis(phi, s - j).rows());
  std::int64_t out_rank = 0, in_rank = 0;
  if (i >= 1 && j >= 1) out_rank = static_cast<std::int64_t>(rank(strand_matrix(StrandKind::EtaPrime, p, n, i, j, &phi).matrix));
  if (i + 1 <= n && j + 1 <= s) {
    in_rank = static_cast<std::int64_t>(rank(strand_matrix(StrandKind::EtaPrime, p, n, i + 1, j + 1, &phi).matrix));
  }
  return dim - out_rank - in_rank;
}

}  // namespace

TEST(Wedge, Basis) {
  EXPECT_EQ(wedge_basis(3, 2), (std::vector<unsigned>{0b011, 0b101, 0b110}));
  EXPECT_EQ(wedge_basis(4, 0), (std::vector<unsigned>{0}));
  EXPECT_TRUE(wedge_basis(2, 3).empty());
}

TEST(Strand, KappaAtDegreeZeroIsInclusion) {
  StrandMatrix k = strand_matrix(StrandKind::Kappa, Prime(5), 3, 1, 0);
  EXPECT_EQ(rank(k.matrix), 3u);
  EXPECT_EQ(k.matrix, FMatrix::identity(Prime(5), 3));
}

TEST(Strand, EtaOnLinearPiece) {
  StrandMatrix e = strand_matrix(StrandKind::Eta, Prime(5), 3, 1, 1);
  EXPECT_EQ(e.matrix.rows(), 3u * 3u);
  EXPECT_EQ(e.matrix.cols(), 1u);
  EXPECT_EQ(rank(e.matrix), 1u);
}

TEST(Strand, DifferentialSquaresToZero) {
  const Prime p(7);
  for (int n = 2; n <= 4; ++n) {
    for (int a = 2; a <= n; ++a) {
      for (int b = 0; b <= 3; ++b) {
        FMatrix k1 = strand_matrix(StrandKind::Kos, p, n, a, b).matrix;
        FMatrix k2 = strand_matrix(StrandKind::Kos, p, n, a - 1, b + 1).matrix;
        EXPECT_TRUE((k1 * k2).is_zero());
        if (b >= 2) {
          FMatrix e1 = strand_matrix(StrandKind::Eta, p, n, a, b).matrix;
          FMatrix e2 = strand_matrix(StrandKind::Eta, p, n, a - 1, b - 1).matrix;
          EXPECT_TRUE((e1 * e2).is_zero());
        }
      }
    }
  }
  SplitMix64 rng(3);
  DividedElem phi = random_divided(p, 3, 6, rng);
  for (int a = 2; a <= 3; ++a) {
    for (int b = 2; b <= 6; ++b) {
      FMatrix e1 = strand_matrix(StrandKind::EtaPrime, p, 3, a, b, &phi).matrix;
      FMatrix e2 = strand_matrix(StrandKind::EtaPrime, p, 3, a - 1, b - 1, &phi).matrix;
      EXPECT_TRUE((e1 * e2).is_zero());
    }
  }
}

TEST(Strand, KoszulStrandIsExact) {
  // the Koszul complex of P is exact away from the residue field
  const Prime p(5);
  const int n = 3;
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b <= 3; ++b) {
      FMatrix in = strand_matrix(StrandKind::Kos, p, n, a + 1, b - 1).matrix;
      FMatrix out = strand_matrix(StrandKind::Kos, p, n, a, b).matrix;
      const std::int64_t dim = static_cast<std::int64_t>(out.rows());
      EXPECT_EQ(dim - static_cast<std::int64_t>(rank(out)), static_cast<std::int64_t>(rank(in)));
    }
  }
}

TEST(CRank, MatchesExplicitStrands) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    SplitMix64 rng(seed);
    DividedElem phi = random_divided(Prime(seed % 2 ? 3 : 7), 3, 3 + static_cast<int>(seed % 4), rng);
    const int s = phi.degree();
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= s - 1; ++j) EXPECT_EQ(c_rank(phi, i, j), c_rank_oracle(phi, i, j)) << i << "," << j;
  }
  HomogPoly f = parse_poly("x*y^3+y*z^3+z*x^3", Prime(7), 3);
  DividedElem phi = link_inverse_poly(f, 7);
  for (int j = 0; j <= 13; ++j) EXPECT_EQ(c_rank(phi, 1, j), c_rank_oracle(phi, 1, j)) << j;
}

TEST(CRank, ZeroVanishesForRandomPhi) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SplitMix64 rng(seed * 17);
    DividedElem phi = random_divided(Prime(5), 2 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 5), rng);
    if (phi.is_zero()) continue;
    for (int j = 0; j <= phi.degree() - 1; ++j) EXPECT_EQ(c_rank(phi, 0, j), 0);
  }
}

TEST(CRank, FirstCokernelVanishesFromMiddleDegree) {
  HomogPoly f = parse_poly("x*y^3+y*z^3+z*x^3", Prime(7), 3);
  DividedElem phi = link_inverse_poly(f, 7);
  const int s = phi.degree();
  for (int m = s / 2; m <= s - 1; ++m) EXPECT_EQ(c_rank(phi, 1, s - m - 1), 0) << m;
}

TEST(Ledger, CompressedMiddleTruncation) {
  HomogPoly f = parse_poly("x*y^3+y*z^3+z*x^3", Prime(7), 3);
  DividedElem phi = link_inverse_poly(f, 7);
  const int s = phi.degree(), m = (s + 1) / 2;
  DegreeLedger led = truncated_degree_ledger(phi, m);
  EXPECT_TRUE(led.contained);
  EXPECT_EQ(led.predicted, (std::set<int>{m, m + 1}));
  DegreeLedger top = truncated_degree_ledger(phi, s + 1);
  EXPECT_EQ(top.measured, (std::set<int>{s + 1}));
}

TEST(Ledger, NonCompressedWithinSuperset) {
  DividedElem phi = link_inverse_poly(parse_poly("x^4+y^4+z^4", Prime(7), 3), 7);
  for (int m = 2; m <= phi.degree(); m += 3) EXPECT_TRUE(truncated_degree_ledger(phi, m).contained) << m;
}
