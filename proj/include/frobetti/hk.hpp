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

#include <boost/rational.hpp>

#include "frobetti/polyring.hpp"

namespace frobetti {

using Rational = boost::rational<std::int64_t>;

struct HKReport {
  int q = 0;
  std::int64_t direct = 0;
  std::vector<std::int64_t> profile;  // dim (R/m^[q])_j for j = 0..n(q-1)
  bool opposite_parity = false;       // q and deg f of different parity
  bool formula_applies = false;       // n = 3, q >= d + 3, opposite parity, compressed link
  std::optional<Rational> formula;    // set when formula_applies
};

/// dim_k R/m^[q] summed degree by degree: dim B_j - rank(f : B_{j-d} -> B_j) with
/// B = P/(x1^q, ..., xn^q).
HKReport hk_direct(const HomogPoly& f, int q);
/// 3/4 d q^2 - (d^3 - d)/12.
Rational hk_formula(std::int64_t d, std::int64_t q);

enum class SeriesVerdict { True, False, Inapplicable };

struct SeriesCheck {
  SeriesVerdict verdict = SeriesVerdict::Inapplicable;
  std::string reason;
  std::vector<std::int64_t> measured, expected;
};
/// Compares the Hilbert function of P/(x^q, y^q, z^q, f) with the coefficients of
/// (1 - 3t^q - t^d + 2d t^b + 3t^a - 2d t^{b+1}) / (1-t)^3, b = (3q + d - 1)/2, a = q + d.
/// Inapplicable unless n = 3, q >= d + 3, q and d have opposite parity and the link is
/// relatively compressed.
SeriesCheck hilbert_series_check(const HomogPoly& f, int q);

std::string to_string(SeriesVerdict v);

}  // namespace frobetti
