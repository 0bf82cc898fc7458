#pragma once
// The full subcategory of single-variable classes {x | P} that provably
// form sets: each carries an obligation exists z. forall x. (x in z <-> P).
// On top of that live the finite-limit and exponential witnesses: a
// one-element terminal, pairing products, and function-space objects with
// their evaluation arrows.  As elsewhere, nothing here is proved; every
// construction hands back the obligations that make it legitimate.

#include <vector>

#include "zfcat/obligation.hpp"
#include "zfcat/syncat.hpp"

namespace zfcat {

// A class in a context of length exactly one.
struct DefinableClass {
  FormulaInContext cls;
};

// Validating constructors; throw std::invalid_argument unless the context
// is a single variable covering the body's free variables.
DefinableClass mk_class(Var x, FormulaPtr body);
DefinableClass mk_class(const FormulaInContext& f);

// The claim that {x | P} is a set: exists z. forall x. (x in z <-> P),
// with z chosen fresh for P.
Obligation set_obligation(const DefinableClass& a);

struct DefinableSetWitness {
  DefinableClass cls;
  Obligation obligation;
};
DefinableSetWitness definable_set(const DefinableClass& a);

// {x | x = 0}: the class whose only member is the empty set.
DefinableClass dst_terminal();

struct DstProduct {
  DefinableClass obj;  // {z | exists x y. z = <x,y> /\ P /\ Q}
  Arrow proj1;
  Arrow proj2;
  std::vector<Obligation> obligations;  // three per projection
};
DstProduct dst_product(const DefinableClass& a, const DefinableClass& b);

struct DstExponential {
  // {f | Fun(f) /\ forall s. (s in dom f <-> P(s))
  //             /\ forall s'. (s' in ran f -> Q(s'))}
  DefinableClass obj;
  // Evaluation dst_product(obj, a).obj -> b: the pair <f,x> maps to the y
  // with <x,y> in f.
  Arrow eval;
  std::vector<Obligation> obligations;  // eval's three
};
DstExponential dst_exponential(const DefinableClass& a, const DefinableClass& b);

}  // namespace zfcat
