#pragma once
// Categories internal to the formula category: an object-of-objects and an
// object-of-arrows together with source, target, identity and composition
// arrows, the object of composable pairs, and the law obligations that make
// the data a category.  The concrete instance built here is the category
// whose arrows are set functions packaged with a codomain, <f,z> with f a
// function and ran(f) contained in z.
//
// Externalization: a class with exactly one element names that element, and
// the named elements of the object-of-objects and object-of-arrows form an
// ordinary category whose structure maps are post-composition with the
// internal arrows.  Everything here emits obligations; nothing is proved.

#include <string>
#include <vector>

#include "zfcat/dst.hpp"
#include "zfcat/obligation.hpp"
#include "zfcat/syncat.hpp"

namespace zfcat {

struct InternalCategory {
  FormulaInContext c0;     // object of objects
  FormulaInContext c1;     // object of arrows
  FormulaInContext cpair;  // object of composable pairs
  // {F,G,J | J packages the composable pair (F,G)}: the designated section
  // of the pullback presentation of cpair, used to build pairing arrows.
  FormulaInContext pairing;
  Arrow d0;    // source:      c1 -> c0
  Arrow d1;    // target:      c1 -> c0
  Arrow id;    // identity:    c0 -> c1
  Arrow comp;  // composition: cpair -> c1
  Arrow p0;    // first of a composable pair:  cpair -> c1
  Arrow p1;    // second of a composable pair: cpair -> c1
  // The six arrows' relation obligations, three each, in the field order
  // above (typing, uniqueness, totality per arrow).
  std::vector<Obligation> obligations;
};

// The category of set functions inside the formula language:
//   c0    = {x | x = x}
//   c1    = {F | exists f z. F = <f,z> /\ Fun(f) /\ ran(f) sub z}
//   cpair = {J | J = <f,<f',z>> for composable f, f'}
// with source = domain extraction, target = second projection, identity =
// diagonal graph, composition = relational composite of the two graphs.
InternalCategory set_internal();

// The pairing arrow <h,k> : X -> cpair for h, k : X -> c1, realized by
// conjoining the two relations and packaging the resulting pair of arrows
// through ic.pairing.  Requires h and k to share their domain and to land
// in ic.c1; throws std::invalid_argument otherwise.
Arrow pair_into_cpair(const InternalCategory& ic, const Arrow& h, const Arrow& k);

// The category laws as relation-equivalence obligations, in this order:
//   [0] source of an identity arrow:  d0 . id          = id_{c0}
//   [1] target of an identity arrow:  d1 . id          = id_{c0}
//   [2] source of a composite:        d0 . comp        = d0 . p0
//   [3] target of a composite:        d1 . comp        = d1 . p1
//   [4] left unit:                    comp . <id.d0, 1> = id_{c1}
//   [5] right unit:                   comp . <1, id.d1> = id_{c1}
//   [6] associativity, over the object of composable triples built as the
//       pullback of (d1 . comp) against d0.
std::vector<Obligation> internal_obligations(const InternalCategory& ic);

// A class claimed to have exactly one member, naming that member.
struct GlobalElement {
  DefinableClass cls;
  Obligation uniqueness;  // |- exists x. (P /\ forall x'. (P[x'] -> x' = x))
};
GlobalElement global_element(const DefinableClass& a,
                             const std::string& site = "global_element");

// The externalization of an internal category: objects are named elements
// of c0, arrows are named elements of c1, and the structure maps below
// push names through the internal arrows.
struct GammaCategory {
  InternalCategory ic;
};
GammaCategory gamma(InternalCategory ic);

// Membership side of using a name: uniqueness plus typing of the named
// element into c0 (objects) or c1 (arrows).
std::vector<Obligation> gamma_object_obligations(const GammaCategory& g,
                                                 const DefinableClass& a);
std::vector<Obligation> gamma_arrow_obligations(const GammaCategory& g,
                                                const DefinableClass& a);

GlobalElement gamma_source(const GammaCategory& g, const GlobalElement& f);
GlobalElement gamma_target(const GammaCategory& g, const GlobalElement& f);
GlobalElement gamma_identity(const GammaCategory& g, const GlobalElement& x);

// Composition of named arrows: pair the two names, push through comp.  The
// match obligation records that a's target names the same element as b's
// source; a mismatch shows up as its refutation, never as an exception.
struct GlobalComposite {
  GlobalElement composite;
  Obligation match;
};
GlobalComposite gamma_compose(const GammaCategory& g, const GlobalElement& a,
                              const GlobalElement& b);

// The claim that two names denote the same element: |- P <-> Q over a
// shared free variable.
Obligation global_equal(const GlobalElement& a, const GlobalElement& b,
                        const std::string& site = "global_equal");

}  // namespace zfcat
