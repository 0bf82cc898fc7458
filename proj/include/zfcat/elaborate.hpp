#pragma once
// Compile surface formulas to the kernel.  Every pseudo-term in an atom is
// unfolded Russell-style: a fresh witness variable is introduced together
// with the term's defining formula, scoped by a wide existential around the
// atom.  `x = 0` becomes `exists w. (forall u. ~(u in w)) /\ x = w`.
// Derived predicates expand to their textbook definitions; membership in a
// class brace is substitution into the brace body.

#include <stdexcept>

#include "zfcat/formula.hpp"
#include "zfcat/surface.hpp"

namespace zfcat {

struct ElabError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws ElabError on a class brace used as a set term, equality with a
// class brace on either side, or a class-brace body whose free variables
// escape its binder.  Fresh witness names are generated deterministically
// from the input (numeric suffixes, never reusing a name that occurs in it).
FormulaPtr elaborate(const SFormulaPtr& f);

}  // namespace zfcat
