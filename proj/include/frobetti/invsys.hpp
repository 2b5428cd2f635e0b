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
#include <optional>
#include <string>
#include <vector>

#include "frobetti/ffla.hpp"
#include "frobetti/polyring.hpp"

namespace frobetti {

/// Matrix of Phi_i : S_i -> D_{s-i}, g -> g . phi. Row k is the image of the k-th monomial
/// of S_i, written over GradedBasis(n, s - i).
FMatrix catalecticant(const DividedElem& phi, int i);
/// rank Phi_i computed by streaming rows through a banded echelon.
std::size_t catalecticant_rank(const DividedElem& phi, int i);
/// Rows form a basis of (ann phi)_i over GradedBasis(n, i). All of S_i when i > deg phi.
FMatrix ann_piece(const DividedElem& phi, int i);
/// H_i(P/ann phi) = rank Phi_i for i = 0..deg phi.
std::vector<std::int64_t> hilbert_function(const DividedElem& phi);
/// Reduced echelon basis of D'_{s-m} = Phi_m(S_m), as rows over GradedBasis(n, s - m).
FMatrix dprime_basis(const DividedElem& phi, int m);

/// Hilbert function of P/(x1^q, ..., xn^q) in degree j.
std::int64_t ci_hilbert(int n, int q, int j);

enum class CheckMode { Quick, Full };

struct DegreeCheck {
  int degree;
  std::int64_t measured;  // H_i(P/J)
  std::int64_t expected;  // min(H_i(P/c), H_{s-i}(P/c))
};

struct CompressedReport {
  bool compressed = false;
  int n = 0, d = 0, q = 0, s = 0;
  CheckMode mode = CheckMode::Quick;
  std::vector<DegreeCheck> degrees;
  std::vector<std::string> warnings;
};

/// Whether (x^q) : f is relatively compressed with respect to (x^q).
/// Quick checks the single degree ceil(s/2); Full checks every degree 0..s.
/// Requires 1 <= deg f < q; q not a power of p and d = 1 only produce warnings.
CompressedReport is_relatively_compressed(const HomogPoly& f, int q, CheckMode mode);

/// Deterministic 64-bit generator (SplitMix64).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() noexcept;
  /// Uniform in [0, bound) by rejection.
  std::uint64_t uniform(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

/// Form of degree d with every coefficient uniform in GF(p).
HomogPoly random_form(Prime p, int n, int d, SplitMix64& rng);
DividedElem random_divided(Prime p, int n, int s, SplitMix64& rng);

struct SearchResult {
  std::optional<HomogPoly> f;
  int attempts = 0;
};

/// Draws random forms until one passes the quick compressedness check.
SearchResult random_compressed_search(Prime p, int n, int d, int q, std::uint64_t seed,
                                      int max_attempts);

/// Whether q is a positive power of p.
bool is_power_of(std::uint64_t q, std::uint64_t p) noexcept;

}  // namespace frobetti
