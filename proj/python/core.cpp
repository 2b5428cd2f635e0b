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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "frobetti/cli.hpp"
#include "frobetti/hk.hpp"
#include "frobetti/invsys.hpp"
#include "frobetti/linkage.hpp"
#include "frobetti/resolution.hpp"

namespace py = pybind11;
using namespace frobetti;

namespace {

HomogPoly poly(std::uint32_t p, const std::string& f, int n) { return parse_poly(f, Prime(p), n); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Betti tables, links and Hilbert-Kunz data of Frobenius powers over hypersurfaces";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<BettiTable>(m, "BettiTable")
      .def_property_readonly("ring", [](const BettiTable& t) { return t.ring() == RingTag::P ? "P" : "R"; })
      .def_property_readonly("length", &BettiTable::length)
      .def("at", &BettiTable::at, py::arg("i"), py::arg("j"))
      .def("total", &BettiTable::total, py::arg("i"))
      .def("twists", &BettiTable::twists, py::arg("i"))
      .def("entries",
           [](const BettiTable& t) {
             std::vector<std::tuple<int, int, std::int64_t>> out;
             for (const auto& [k, v] : t.entries()) out.emplace_back(k.first, k.second, v);
             return out;
           })
      .def("to_text", &BettiTable::to_text)
      .def("to_json", &BettiTable::to_json)
      .def_static("from_json", [](const std::string& s) { return BettiTable::from_json(s); })
      .def("__eq__", &BettiTable::operator==)
      .def("__str__", &BettiTable::to_text);

  m.def(
      "format_poly", [](std::uint32_t p, const std::string& f, int n) { return format_poly(poly(p, f, n)); },
      py::arg("p"), py::arg("f"), py::arg("n") = 3, "Normalised text of a homogeneous polynomial.");
  m.def(
      "is_relatively_compressed",
      [](std::uint32_t p, const std::string& f, int q, bool full, int n) {
        return is_relatively_compressed(poly(p, f, n), q, full ? CheckMode::Full : CheckMode::Quick).compressed;
      },
      py::arg("p"), py::arg("f"), py::arg("q"), py::arg("full") = false, py::arg("n") = 3);
  m.def(
      "generator_profile",
      [](std::uint32_t p, const std::string& f, int q, int n) {
        return measured_generator_profile(poly(p, f, n), q).counts;
      },
      py::arg("p"), py::arg("f"), py::arg("q"), py::arg("n") = 3,
      "Degree -> number of minimal generators of (x^q) : f.");
  m.def(
      "socle_direct", [](std::uint32_t p, const std::string& f, int q, int n) { return socle_direct(poly(p, f, n), q).dims; },
      py::arg("p"), py::arg("f"), py::arg("q"), py::arg("n") = 3);
  m.def(
      "socle_via_link",
      [](std::uint32_t p, const std::string& f, int q, int n) { return socle_via_link(poly(p, f, n), q).dims; },
      py::arg("p"), py::arg("f"), py::arg("q"), py::arg("n") = 3);
  m.def(
      "betti_over_P", [](std::uint32_t p, const std::string& f, int q, int n) { return betti_over_P(poly(p, f, n), q); },
      py::arg("p"), py::arg("f"), py::arg("q"), py::arg("n") = 3);
  m.def(
      "betti_over_R",
      [](std::uint32_t p, const std::string& f, int q, int steps, std::optional<int> cap, int n) {
        py::gil_scoped_release release;
        return betti_over_R(poly(p, f, n), q, steps, cap);
      },
      py::arg("p"), py::arg("f"), py::arg("q"), py::arg("steps") = 4, py::arg("degree_cap") = py::none(),
      py::arg("n") = 3);
  m.def(
      "hk_direct", [](std::uint32_t p, const std::string& f, int q, int n) { return hk_direct(poly(p, f, n), q).direct; },
      py::arg("p"), py::arg("f"), py::arg("q"), py::arg("n") = 3);
  m.def(
      "hk_formula",
      [](std::int64_t d, std::int64_t q) {
        Rational r = hk_formula(d, q);
        return std::make_pair(r.numerator(), r.denominator());
      },
      py::arg("d"), py::arg("q"), "Closed form as (numerator, denominator).");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
  m.def("set_thread_limit", &set_thread_limit, py::arg("threads"));
}
