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

#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "frobetti/ffla.hpp"
#include "frobetti/polyring.hpp"

namespace frobetti {

/// Subsets of {0..n-1} of size a as bitmasks, in lexicographic order of increasing tuples.
std::vector<unsigned> wedge_basis(int n, int a);

enum class StrandKind {
  Kappa,     // Λ^a ⊗ S_b -> Λ^{a-1} ⊗ S_{b+1}, multiplication by the X_i
  Eta,       // Λ^a ⊗ D_b -> Λ^{a-1} ⊗ D_{b-1}, contraction by the x_i
  EtaPrime,  // restriction of Eta to Λ^a ⊗ D'_b -> Λ^{a-1} ⊗ D'_{b-1}
  Kos,       // degree-b strand of the Koszul complex of P: Λ^a ⊗ P_b -> Λ^{a-1} ⊗ P_{b+1}
};

/// Row r is the image of the r-th basis element of the source, written over the target basis.
/// Tensor bases are wedge-major: index = wedge_index * dim + monomial_index. For EtaPrime the
/// second factor uses the rows of dprime_basis and coordinates with respect to them.
struct StrandMatrix {
  StrandKind kind;
  int a, b;
  FMatrix matrix;
};

StrandMatrix strand_matrix(StrandKind kind, Prime p, int n, int a, int b,
                           const DividedElem* phi = nullptr);

/// dim C_{i,j}: cycles of η' on Λ^i ⊗ D'_j modulo the image of Λ^{i+1} ⊗ D'_{j+1}.
std::int64_t c_rank(const DividedElem& phi, int i, int j);

struct DegreeLedger {
  std::set<int> measured;   // generator degrees of J_{>=m}
  std::set<int> predicted;  // m, m+1 and m+t-j+1 for every nonzero C_{1,j}, j < t = s-m
  bool contained = false;
};

/// Generator degrees of the truncation J_{>=m} of J = ann(phi), measured by span growth and
/// compared against the degrees allowed by the cokernels C_{1,j}. Requires 1 <= m <= s+1.
DegreeLedger truncated_degree_ledger(const DividedElem& phi, int m);

}  // namespace frobetti
