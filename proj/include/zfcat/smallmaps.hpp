#pragma once
// Small maps over the definable classes.  An arrow counts as small when
// every fiber over its codomain is a set, stated as the obligation
// forall y. exists z. forall x. (x in z <-> F(x,y)).  Around that class
// live the standard witnesses: power classes with their membership
// inclusions, representing arrows for small relations, the subset order,
// monos into the universal class {x | x = x}, the ZF-algebra on that
// universe (subset order plus singleton successor), and suprema along
// small arrows.  As in the neighbouring modules, constructions return
// data together with proof obligations; nothing is discharged here.

#include <string>
#include <vector>

#include "zfcat/dst.hpp"
#include "zfcat/obligation.hpp"
#include "zfcat/syncat.hpp"

namespace zfcat {

// forall y. exists z. forall x. (x in z <-> F(x,y)), z fresh: every fiber
// of f is a set.  Requires single-variable domain and codomain contexts;
// collapse_context first for wider arrows.
Obligation smallness_obligation(const Arrow& f,
                                const std::string& site = "smallness_obligation");

struct SmallnessWitness {
  Arrow arrow;
  Obligation obligation;
};
SmallnessWitness small_arrow(const Arrow& f,
                             const std::string& site = "smallness_obligation");

// Injectivity of the relation: F(x,y) /\ F(x',y) |- x = x' componentwise.
// Together with the three arrow obligations this is the mono claim.
Obligation mono_obligation(const Arrow& f,
                           const std::string& site = "mono_obligation");

// Power class of X = {x | P} with its membership relation.
struct PowerData {
  DefinableClass ps;    // {y | forall x. (x in y -> P)}
  DefinableClass mem;   // {z | exists x y. z = <x,y> /\ (forall t in y. P(t)) /\ x in y}
  DefinableClass prod;  // {p | exists x y. p = <x,y> /\ P(x) /\ ps(y)}, X x PS in one variable
  Arrow e;              // mem -> prod, the inclusion z = z'
  SmallnessWitness second_leg;          // mem -> ps, <x,y> |-> y
  std::vector<Obligation> obligations;  // e's three arrow obligations, then the leg's smallness
};
PowerData power_data(const DefinableClass& x);

// Representing arrow of a two-variable relation {x,y | R} between
// X = {x | P} and Z = {y | Q} whose second leg is small:
//   rho = {y,y' | Q /\ forall x. (x in y' <-> R)} : Z -> PS(X).
struct RepresentedRelation {
  Arrow rho;
  Obligation smallness;  // forall y. exists y'. forall x. (x in y' <-> R)
  Obligation square;     // Q |- R <-> exists y'. (rho(y,y') /\ x in y')
  std::vector<Obligation> obligations;  // rho's three arrow obligations
};
RepresentedRelation representing_arrow(const DefinableClass& x,
                                       const DefinableClass& z,
                                       const FormulaInContext& r);

// The square condition alone, for a candidate g : Z -> PS(X) in place of
// rho.  Any single-valued candidate validating it has the same graph as
// the representing arrow, which is how uniqueness gets tested.
Obligation representation_square(const DefinableClass& z, const FormulaInContext& r,
                                 const Arrow& g,
                                 const std::string& site = "representation_square");

// Subset order on the power class of X.
struct SubsetData {
  DefinableClass dom;   // {z | exists y y'. z = <y,y'> /\ y sub y' /\ (forall x in y'. P)}
  DefinableClass prod;  // {p | exists y y'. p = <y,y'> /\ ps(y) /\ ps(y')}
  Arrow arrow;          // dom -> prod, the inclusion z = z'
  SmallnessWitness second_leg;          // dom -> ps, <y,y'> |-> y'
  std::vector<Obligation> obligations;  // arrow's three, then the leg's smallness
};
SubsetData subset_arrow(const DefinableClass& x);

// The mono {x | P} -> {x | x = x} with graph P /\ x = x'.
struct MonoResult {
  Arrow arrow;
  std::vector<Obligation> obligations;  // typing, uniqueness, totality, mono
};
MonoResult universal_mono(const DefinableClass& a);

// ZF-algebra on the universal class: subset order and singleton successor.
struct ZFAlgebra {
  FormulaInContext carrier;  // {x | x = x}
  Arrow order;               // the subset_arrow inclusion over the carrier
  Arrow succ;                // {x,z | z = {x}}
  Obligation reflexivity;    // every diagonal pair <y,y> lands in the order's class
  std::vector<Obligation> obligations;  // succ's three arrow obligations, then reflexivity
};
ZFAlgebra initial_zf_algebra();

// Supremum of lam along the small arrow j, an arrow j.cod -> lam.cod:
//   {a,u | Q(a) /\ forall t. (t in u <-> exists b. (j(b,a) /\ exists v. (lam(b,v) /\ t in v)))}.
// The value at a is the union of lam's values across a's fiber.
struct SupResult {
  Arrow sup;
  Arrow along;  // j, kept for the square obligations
  Arrow lam;
  std::vector<Obligation> obligations;  // sup's three arrow obligations
};
SupResult sup_along(const SmallnessWitness& j, const Arrow& lam);

// Defining property of the sup at a test square (jp, lamp), two arrows out
// of a common object into j.cod and lam.cod respectively: one obligation
// per direction of
//   sup . jp <= lamp   iff   lam . pi2 <= lamp . pi1,
// where <= compares values by inclusion and pi1, pi2 project the pullback
// of `along` against jp.
std::vector<Obligation> sup_square_obligations(const SupResult& s, const Arrow& jp,
                                               const Arrow& lamp);

// The smallness claim for the unique arrow {x | P} -> terminal, next to
// the set claim for {x | P}.  Once an empty set exists the two are
// interderivable, so verdicts on them should always agree.
struct SetVsSmall {
  Obligation smallness;
  Obligation set;
};
SetVsSmall small_iff_set(const DefinableClass& a, bool needs_infinity = false);

}  // namespace zfcat
