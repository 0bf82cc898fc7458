#include <pybind11/pybind11.h>

#include "zfcat/canonical.hpp"
#include "zfcat/elaborate.hpp"
#include "zfcat/parser.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_zfcat, m) {
  m.doc() = "set-theoretic category toolkit";

  m.def(
      "elaborate",
      [](const std::string& src) { return zfcat::pretty(zfcat::elaborate(zfcat::parse(src))); },
      py::arg("formula"),
      "Parse a surface formula and unfold all pseudo-terms, returning the kernel form.");

  m.def(
      "canonicalize",
      [](const std::string& src) {
        return zfcat::pretty(zfcat::canonicalize(zfcat::elaborate(zfcat::parse(src))));
      },
      py::arg("formula"),
      "Parse, elaborate and rewrite to canonical form.");

  m.def(
      "alpha_eq",
      [](const std::string& a, const std::string& b) {
        return zfcat::alpha_eq(zfcat::elaborate(zfcat::parse(a)),
                               zfcat::elaborate(zfcat::parse(b)));
      },
      py::arg("a"), py::arg("b"),
      "Whether two surface formulas elaborate to alpha-equivalent kernel forms.");
}
