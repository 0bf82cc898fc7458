#pragma once
// Recursive-descent parser for the surface grammar.
//
//   formula  := "forall" v "." formula | "exists" v "." formula | iff
//   iff      := impl ("<->" iff)?            (right-associative)
//   impl     := or ("->" impl)?
//   or       := and ("\/" or)?
//   and      := unary ("/\" and)?
//   unary    := "~" unary | "(" formula ")" | "true" | "false"
//             | quantified | atom
//   atom     := "Fun(" t ")" | "ON(" t ")" | "Nat(" t ")"
//             | "dom(" t ")" "=" t | "ran(" t ")" "sub" t
//             | t "in" ("dom(" t ")" | "ran(" t ")" | "ON" | "Nat" | t)
//             | t "=" t | t "sub" t
//   t        := v | "0" | "1" | "sigma(" t ")" | "sing(" t ")"
//             | "upair(" t "," t ")" | "Un(" t ")" | "<" t "," t ">"
//             | "{" v "|" formula "}"
//
// Identifiers match [A-Za-z][A-Za-z0-9_']* and must not be keywords.

#include <stdexcept>
#include <string>

#include "zfcat/surface.hpp"

namespace zfcat {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(std::string msg, int ln, int col)
      : std::runtime_error(std::move(msg)), line(ln), column(col) {}
};

// Parse a surface formula.  Throws ParseError with 1-based line/column.
SFormulaPtr parse(const std::string& text);

}  // namespace zfcat
