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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frobetti/polymatrix.hpp"
#include "frobetti/polyring.hpp"

namespace frobetti {

enum class RingTag { P, R };

/// Graded Betti numbers beta_{i,j} for homological degrees 0..length.
class BettiTable {
 public:
  BettiTable(RingTag ring, int length);

  RingTag ring() const noexcept { return ring_; }
  int length() const noexcept { return length_; }
  void set(int i, int j, std::int64_t beta);
  std::int64_t at(int i, int j) const;
  std::int64_t total(int i) const;
  /// Twists of F_i in ascending order, with multiplicity.
  std::vector<int> twists(int i) const;
  /// Nonzero entries keyed by (i, j).
  const std::map<std::pair<int, int>, std::int64_t>& entries() const noexcept { return b_; }

  /// Grid with one row per nonzero value of j - i, "." for zero, as printed by Macaulay2
  /// but with zero rows skipped.
  std::string to_text() const;
  /// {"ring": "P"|"R", "length": L, "entries": [[i, j, beta], ...]} with entries sorted.
  std::string to_json() const;
  static BettiTable from_json(std::string_view text);
  static BettiTable from_text(std::string_view text, RingTag ring);

  bool operator==(const BettiTable& o) const {
    return ring_ == o.ring_ && length_ == o.length_ && b_ == o.b_;
  }

 private:
  RingTag ring_;
  int length_;
  std::map<std::pair<int, int>, std::int64_t> b_;
};

/// Map of graded free modules; matrix rows index target generators, columns source
/// generators, and entry (r, c) is homogeneous of degree source[c] - target[r].
struct GradedFreeMap {
  std::vector<int> source, target;
  PolyMatrix matrix;
};

struct Resolution {
  RingTag ring;
  int q = 0;
  /// maps[i] is the differential F_{i+1} -> F_i; over R entries are normal forms.
  std::vector<GradedFreeMap> maps;
  BettiTable betti;
  std::vector<std::string> notes;
};

/// Minimal resolution of P/(x1^q, ..., xn^q, f) over P, maps included, by span growth.
Resolution resolve_over_P(const HomogPoly& f, int q);
/// Betti table of P/(x1^q, ..., xn^q, f) over P. For n = 3 it is read off Tor: beta_1 from
/// the generators, beta_3 from the socle and beta_2 from the Hilbert series; other n use
/// resolve_over_P.
BettiTable betti_over_P(const HomogPoly& f, int q);

/// Minimal resolution of R/m^[q] over R = P/(f) through homological degree steps.
/// Without a cap, degrees are scanned only where the Shamash resolution built from the
/// P-resolution has generators, which bounds the minimal twists. With a cap, step i scans
/// every degree up to (max twist of F_i) + cap, and 0 means cap = q + d. A generator found
/// at the last scanned degree raises PreconditionError asking for a larger cap.
Resolution resolve_over_R(const HomogPoly& f, int q, int steps,
                          std::optional<int> degree_cap = std::nullopt);
BettiTable betti_over_R(const HomogPoly& f, int q, int steps,
                        std::optional<int> degree_cap = std::nullopt);

struct ExactnessAudit {
  bool compositions_zero = true;
  bool euler_matches = true;  // over P only: sum_i (-1)^i dim F_{i,j} = dim M_j
  std::vector<std::string> failures;
  bool ok() const { return compositions_zero && euler_matches; }
};
ExactnessAudit audit_resolution(const Resolution& res, const HomogPoly& f);

struct TailInfo {
  bool found = false;
  int start = -1;         // first homological degree of the tail
  std::int64_t rank = 0;  // common rank of the tail modules
  int period_shift = 0;   // twists(i + 2) = twists(i) + period_shift
  /// Gaps (t_{i+1} - t_i, t_{i+2} - t_{i+1}) when each tail module is a uniform shift of the
  /// previous one.
  std::optional<std::pair<int, int>> gaps;
};
/// Looks for constant ranks from some index on, with twists(i + 2) = twists(i) + const.
/// Needs at least three tail columns; tables shorter than four columns give found = false.
TailInfo detect_periodic_tail(const BettiTable& t);

struct TailComparison {
  bool equal = false;
  int shift = 0;  // twist shift from the first table to the second
  std::string message;
};
/// Compares two tails column by column over their common tail range.
TailComparison compare_tails(const BettiTable& a, const BettiTable& b);

struct MatrixFactorization {
  PolyMatrix a, b;  // a has the smaller entry degree
  HomogPoly f;
  int step = 0;     // a or b is the lift of the differential F_step -> F_{step-1}
  int a_degree = 0, b_degree = 0;
};
/// Lifts the differentials leaving F_at_step and F_{at_step+1} to P and normalises so that
/// a * b = b * a = f * I. Throws PreconditionError ("not a matrix factorization") otherwise.
MatrixFactorization extract_tail_mf(const HomogPoly& f, int q, int at_step);
/// Same, from an already computed resolution over R.
MatrixFactorization extract_tail_mf(const Resolution& res, const HomogPoly& f, int at_step);

/// Worker cap for degree-parallel loops (0 = hardware concurrency).
void set_thread_limit(int threads);
int thread_limit();

}  // namespace frobetti
