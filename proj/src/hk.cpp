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

#include "frobetti/hk.hpp"

#include <algorithm>
#include <map>

#include "frobetti/box.hpp"
#include "frobetti/error.hpp"
#include "frobetti/invsys.hpp"

namespace frobetti {

namespace {

std::vector<std::int64_t> quotient_profile(const HomogPoly& f, int q) {
  const int n = f.num_vars(), d = f.degree(), top = n * (q - 1);
  std::vector<std::int64_t> out(top + 1);
  for (int j = 0; j <= top; ++j) {
    std::int64_t dim = static_cast<std::int64_t>(BoxSlice::get(n, q, j)->size());
    if (j >= d) dim -= static_cast<std::int64_t>(box_mult_rank(f, q, j - d));
    out[j] = dim;
  }
  return out;
}

std::string applicability(const HomogPoly& f, int q) {
  const int d = f.degree();
  if (f.num_vars() != 3) return "needs three variables";
  if (q < d + 3) return "needs q >= d + 3";
  if ((q + d) % 2 == 0) return "q and d have the same parity";
  if (!is_relatively_compressed(f, q, CheckMode::Quick).compressed) return "link is not relatively compressed";
  return "";
}

void check_args(const HomogPoly& f, int q) {
  if (f.is_zero()) throw InvalidArgument("f must be nonzero");
  if (f.degree() < 1 || f.degree() >= q) throw PreconditionError("need 1 <= deg f < q");
}

}  // namespace

HKReport hk_direct(const HomogPoly& f, int q) {
  check_args(f, q);
  HKReport r;
  r.q = q;
  r.profile = quotient_profile(f, q);
  for (auto v : r.profile) r.direct += v;
  r.opposite_parity = (q + f.degree()) % 2 == 1;
  r.formula_applies = applicability(f, q).empty();
  if (r.formula_applies) r.formula = hk_formula(f.degree(), q);
  return r;
}

Rational hk_formula(std::int64_t d, std::int64_t q) {
  return Rational(3 * d * q * q, 4) - Rational(d * d * d - d, 12);
}

SeriesCheck hilbert_series_check(const HomogPoly& f, int q) {
  check_args(f, q);
  SeriesCheck c;
  c.reason = applicability(f, q);
  if (!c.reason.empty()) return c;
  const int d = f.degree(), a = q + d, b = (3 * q + d - 1) / 2;
  std::map<int, std::int64_t> num{{0, 1}};
  num[q] -= 3;
  num[d] -= 1;
  num[b] += 2 * d;
  num[a] += 3;
  num[b + 1] -= 2 * d;
  auto prof = quotient_profile(f, q);
  const int last = std::max<int>(static_cast<int>(prof.size()) - 1, b + 1) + 3;
  for (int j = 0; j <= last; ++j) {
    std::int64_t e = 0;
    for (const auto& [k, v] : num) {
      if (k <= j) e += v * binom(j - k + 2, 2);
    }
    c.expected.push_back(e);
    c.measured.push_back(j < static_cast<int>(prof.size()) ? prof[j] : 0);
  }
  c.verdict = c.expected == c.measured ? SeriesVerdict::True : SeriesVerdict::False;
  if (c.verdict == SeriesVerdict::False) {
    for (std::size_t j = 0; j < c.expected.size(); ++j) {
      if (c.expected[j] != c.measured[j]) {
        c.reason = "first difference in degree " + std::to_string(j);
        break;
      }
    }
  }
  return c;
}

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::True:
      return "true";
    case SeriesVerdict::False:
      return "false";
    default:
      return "inapplicable";
  }
}

}  // namespace frobetti
