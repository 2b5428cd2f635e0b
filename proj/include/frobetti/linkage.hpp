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
#include <set>
#include <string>
#include <vector>

#include "frobetti/polyring.hpp"

namespace frobetti {

/// phi = f / (x1^{q-1} ... xn^{q-1}): the divided monomial x^(q-1-a) carries the coefficient
/// of x^a in f. Requires 1 <= deg f < q.
DividedElem link_inverse_poly(const HomogPoly& f, int q);

struct GeneratorProfile {
  std::map<int, std::int64_t> counts;  // degree -> number of minimal generators
  std::set<int> bounds;                // degrees whose count is only an upper bound
  bool ci_minimal = true;              // x1^q .. xn^q are minimal generators
  std::int64_t total() const;
};

enum class ProfileMode {
  Auto,    // direct below the middle degree, duality above it
  Direct,  // span growth in every degree up to s + 1
};

/// Minimal generator degrees of J = (x1^q, ..., xn^q) : f, measured by span growth:
/// count_i = dim J_i - dim(P_1 J_{i-1}).
GeneratorProfile measured_generator_profile(const HomogPoly& f, int q,
                                            ProfileMode mode = ProfileMode::Auto);

/// C(a+n, n-1) - C(a+n-2, n-1) + n C(a-q+n-2, n-1) - n C(a-q+n, n-1) with a = s/2.
std::int64_t even_generator_count(int n, int d, int q);

/// Generator degrees predicted for a relatively compressed link.
/// Requires n >= 3 and (n - 2) q >= n + d.
GeneratorProfile predicted_generator_profile(int n, int d, int q);

struct SocleReport {
  std::map<int, std::int64_t> dims;  // degree -> dim soc(P/I)_degree, nonzero entries only
  std::int64_t total() const;
  bool operator==(const SocleReport& o) const { return dims == o.dims; }
};

/// Socle of P/(x1^q, ..., xn^q, f) from the multiplication maps degree by degree.
/// f may be zero, giving the complete intersection.
SocleReport socle_direct(const HomogPoly& f, int q);
/// Socle read off the link: degree n(q-1) - i carries the non-CI generators of J in degree i.
SocleReport socle_via_link(const HomogPoly& f, int q);

struct KuShiftResult {
  bool equal = false;
  int shift = 0;
  SocleReport low, high;
};

/// Compares the socles at q0 and q1 after the shift n (q1 - q0) / 2.
KuShiftResult ku_shift_check(const HomogPoly& f, int q0, int q1);

}  // namespace frobetti
