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
#include <string>
#include <vector>

#include "frobetti/ffla.hpp"
#include "frobetti/polymatrix.hpp"
#include "frobetti/polyring.hpp"

namespace frobetti {

/// Alternating matrix: zero diagonal and entry(j, i) = -entry(i, j).
class SkewPolyMatrix {
 public:
  SkewPolyMatrix(Prime p, int n, std::size_t size);
  /// Throws InvalidArgument unless m is square and alternating.
  static SkewPolyMatrix from_matrix(const PolyMatrix& m);

  std::size_t size() const noexcept { return m_.rows(); }
  Prime prime() const noexcept { return m_.prime(); }
  int num_vars() const noexcept { return m_.num_vars(); }
  const SparsePoly& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  /// Sets entry (i, j) and its mirror (j, i); i != j.
  void set(std::size_t i, std::size_t j, const SparsePoly& v);
  const PolyMatrix& matrix() const noexcept { return m_; }
  /// The submatrix on the complement of the given indices.
  SkewPolyMatrix deleting(const std::vector<std::size_t>& idx) const;

 private:
  PolyMatrix m_;
};

/// Pf(X) = sum_{j >= 2} (-1)^j x_{1j} Pf(X without rows and columns 1, j), memoized on the
/// remaining index sets. Size 0 gives 1. Throws InvalidArgument for odd size.
SparsePoly pfaffian(const SkewPolyMatrix& x);
/// Entry (i, j) is (-1)^{i+j} Pf_{ij}(X) for i < j and (-1)^{i+j+1} Pf_{ij}(X) for i > j,
/// where Pf_{ij} deletes rows and columns i and j; X X^v = X^v X = Pf(X) I.
SkewPolyMatrix pfaffian_adjoint(const SkewPolyMatrix& x);
/// Whether gens_j = c (-1)^{j+1} Pf_j(X) for one nonzero scalar c, Pf_j deleting row and
/// column j. X must have odd size equal to the number of generators.
bool be_pfaffian_check(const std::vector<SparsePoly>& gens, const SkewPolyMatrix& x);

/// Determinant by Laplace expansion along rows, memoized on column subsets (size <= 20).
SparsePoly determinant(const PolyMatrix& a);
/// Determinant over GF(p) by elimination.
std::uint32_t scalar_determinant(const FMatrix& a);

struct PfCertificate {
  bool certified = false;
  std::uint32_t unit = 0;  // det(A) = unit * f^2 when certified
  std::vector<std::string> warnings;
};
/// Certifies that the Pfaffian of the (symmetrised) tail matrix is a unit times f through
/// det(A) = c f^2 with c != 0. Expects A square of size 2 deg f with linear entries; other
/// shapes are still evaluated but produce a warning.
PfCertificate certify_pf_of_tail(const PolyMatrix& a, const HomogPoly& f);

}  // namespace frobetti
