#pragma once
// The category whose objects are formulas in context and whose arrows are
// relations between contexts, subject to three provability conditions
// (typing, single-valuedness, totality).  Constructions here never prove
// anything: each one returns its result together with the obligations a
// proof assistant or the finite-model oracle would have to discharge.
//
// Arrows carry a representative relation, not an equivalence class.
// Whether two arrows are "the same" is itself a provability claim, so
// comparisons go through equiv_obligation (or, for the syntactic fast
// path, canonicalize + alpha_eq of the relation bodies).

#include <string>
#include <vector>

#include "zfcat/formula.hpp"
#include "zfcat/obligation.hpp"

namespace zfcat {

// {x1,...,xn | body}: a kernel formula only allowed to mention the listed
// variables, which are distinct.  The context may be empty.
struct FormulaInContext {
  std::vector<Var> ctx;
  FormulaPtr body;
};

// Validating constructor: throws std::invalid_argument when the context
// repeats a variable or the body's free variables escape it.
FormulaInContext mk_object(std::vector<Var> ctx, FormulaPtr body);

// An arrow dom -> cod.  rel's context is a fresh copy of dom.ctx followed
// by a fresh copy of cod.ctx, all distinct; its body relates the two.
struct Arrow {
  FormulaInContext dom;
  FormulaInContext cod;
  FormulaInContext rel;
};

// The three conditions an arrow's relation must satisfy, as named
// sequents.  With F the relation, P/Q the domain/codomain bodies and
// x', y' the copies in F's context:
//
//   typing          F |- P[x'/x] /\ Q[y'/y]
//   uniqueness      F /\ F[y''/y'] |- y' = y''   (componentwise)
//   totality        P[x'/x] |- exists y'. F
//
// `site` names the construction that asked for the arrow; it is recorded
// as the obligations' provenance.
std::vector<Obligation> arrow_obligations(const Arrow& f,
                                          const std::string& site = "mk_arrow");

struct ArrowResult {
  Arrow arrow;
  std::vector<Obligation> obligations;  // exactly the three above
};

// Validates shape (context lengths, distinctness, free-variable scoping)
// and pairs the arrow with its obligations.  Throws std::invalid_argument
// on a malformed relation.
ArrowResult mk_arrow(FormulaInContext dom, FormulaInContext cod,
                     FormulaInContext rel);

// rel = {x',x'' | (x'=x'' componentwise) /\ P[x'/x]}.
Arrow identity(const FormulaInContext& a);

// Relational composition {x',z' | exists y'. F /\ G} with the shared
// middle context freshened.  Requires f.cod and g.dom to have equal
// length and alpha-equal bodies; throws std::invalid_argument otherwise.
Arrow compose(const Arrow& f, const Arrow& g);

// The claim that f and g name the same arrow: |- F <-> G with G's context
// renamed to F's.  Requires matching domains and codomains.
Obligation equiv_obligation(const Arrow& f, const Arrow& g);

struct ProductResult {
  FormulaInContext obj;  // {x,y | P /\ Q}, contexts made disjoint
  Arrow proj1;
  Arrow proj2;
};
ProductResult product(const FormulaInContext& a, const FormulaInContext& b);

enum class Distinguished { Terminal, Initial };

// One-variable representatives: Terminal is {x | forall t. ~(t in x)}
// (the class containing exactly the empty set), Initial is {x | ~(x=x)}.
FormulaInContext distinguished(Distinguished kind);

struct PullbackResult {
  FormulaInContext obj;  // {x',y' | exists z'. F /\ G}
  Arrow p1;
  Arrow p2;
};
// Requires a common codomain (equal length, alpha-equal bodies).
PullbackResult pullback(const Arrow& f, const Arrow& g);

// The mono {x | x=0} -> {x | x=0 \/ x=1} given by x' = 0 /\ y' = 1, in
// elaborated kernel form.
Arrow subobject_classifier();

struct CollapseResult {
  FormulaInContext obj;  // single-variable context
  Arrow iso;             // a -> obj
  Arrow iso_inv;         // obj -> a
};
// Squeezes an n-variable context into one variable via left-nested
// ordered pairs: {x | exists x1..xn. x = <<..<x1,x2>,..>,xn> /\ P}.
// n=1 returns the object unchanged with identity arrows; n=0 pairs the
// closed formula with the one-variable terminal.
CollapseResult collapse_context(const FormulaInContext& a);

struct IntersectionResult {
  FormulaInContext obj;      // three-variable pullback representative
  Obligation iso_witness;    // obj is the diagonal copy of {x | P /\ Q[x/y]}
};
// Intersection of two single-variable classes, computed categorically:
// the pullback of {x,y | P /\ Q} -> {x,y | x=x /\ y=y} <- {x | x=x}
// (the second arrow the diagonal).  iso_witness says the result coincides
// with the usual {x | P /\ Q[x/y]} embedded diagonally.
IntersectionResult intersect_classes(const FormulaInContext& a,
                                     const FormulaInContext& b);

}  // namespace zfcat
