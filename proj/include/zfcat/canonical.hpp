#pragma once
// Canonical forms for kernel formulas.  canonicalize() applies, to fixpoint:
//
//   * one-point elimination   exists v. v = t /\ phi  ~>  phi[t/v]
//     (applied only when v occurs in phi, so free variables are preserved)
//   * reflexivity             t = t  ~>  true, when t is bound by an
//     enclosing quantifier or kept free by a sibling conjunct
//   * existential hoisting    (exists x. A) /\ B  ~>  exists x. A /\ B
//     (x renamed first if it occurs free in B)
//   * true/false conjunct elimination and conjunction flattening
//   * associative-commutative sorting of /\-chains under a total order that
//     is invariant under renaming of bound variables, with deduplication
//   * reordering of adjacent same-kind quantifier blocks by an occurrence
//     signature (so the two associations of a double composite agree)
//
// followed by alpha-normal renaming of bound variables (v1, v2, ... in
// traversal order, skipping names free in the formula).  The result is
// deterministic, idempotent, and preserves truth in every nonempty
// structure.  No rewrite introduces a free variable, so a body stays valid
// for its context; a free variable is dropped only when a false conjunct
// collapses its carrier.

#include "zfcat/formula.hpp"
#include "zfcat/obligation.hpp"

namespace zfcat {

FormulaPtr canonicalize(const FormulaPtr& f);

// Same rewriting applied to every hypothesis and the goal; name and flags
// are preserved.  Model checking is much faster on canonical input because
// the evaluator's constraint propagation keys on the hoisted shapes.
Obligation canonicalize(const Obligation& ob);

}  // namespace zfcat
