#pragma once
// The axioms of ZF as closed kernel formulas: six single axioms plus the
// separation and replacement schemata, instantiated on demand.  Schema
// payloads may use the surface shorthand; they are validated against their
// declared parameters and the assembled axiom is elaborated to the kernel.

#include <optional>
#include <string>
#include <vector>

#include "zfcat/formula.hpp"
#include "zfcat/surface.hpp"

namespace zfcat {

enum class Axiom {
  Extensionality,
  Pairing,
  Union,
  Powerset,
  Infinity,
  Foundation,
};

FormulaPtr axiom(Axiom a);

std::string axiom_name(Axiom a);
std::optional<Axiom> axiom_by_name(const std::string& name);

// forall params, x. exists y. forall subject. (subject in y <-> (subject in x /\ pred))
//
// pred's free variables must lie within params plus subject; the x and y
// bound by the schema shape are chosen fresh, so payload names never clash.
FormulaPtr separation(const SFormulaPtr& pred, const std::vector<Var>& params,
                      const Var& subject);

// forall params, z. (forall x in z there is a unique y with rel  ->
//                    exists z' with, for every x in z, some y in z' with rel)
//
// The uniqueness quantifier unfolds to the two-conjunct form: a witness and
// a universally quantified identification.
FormulaPtr replacement(const SFormulaPtr& rel, const std::vector<Var>& params,
                       const Var& x, const Var& y);

}  // namespace zfcat
