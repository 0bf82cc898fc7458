#include "zfcat/axioms.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "zfcat/canonical.hpp"
#include "zfcat/elaborate.hpp"
#include "zfcat/hf.hpp"
#include "zfcat/obligation.hpp"
#include "zfcat/parser.hpp"

using namespace zfcat;

namespace {

FormulaPtr elab(const std::string& text) { return elaborate(parse(text)); }

bool holds(const FormulaPtr& closed_formula, const Universe& u) {
  return eval(canonicalize(closed_formula), {}, u);
}

Verdict refute(const std::string& open_matrix, const Universe& u) {
  Obligation ob;
  ob.name = "matrix";
  ob.goal = canonicalize(elab(open_matrix));
  return check(ob, u);
}

}  // namespace

TEST_CASE("every axiom is closed") {
  for (Axiom a : {Axiom::Extensionality, Axiom::Pairing, Axiom::Union, Axiom::Powerset,
                  Axiom::Infinity, Axiom::Foundation})
    CHECK(free_vars(axiom(a)).empty());
  CHECK(free_vars(separation(sf::eq(sf::tvar("t"), sf::tvar("t")), {}, Var("t"))).empty());
  CHECK(free_vars(replacement(sf::eq(sf::tvar("x"), sf::tvar("y")), {}, Var("x"), Var("y")))
            .empty());
}

TEST_CASE("axiom names round-trip") {
  for (Axiom a : {Axiom::Extensionality, Axiom::Pairing, Axiom::Union, Axiom::Powerset,
                  Axiom::Infinity, Axiom::Foundation})
    CHECK(axiom_by_name(axiom_name(a)) == a);
  CHECK_FALSE(axiom_by_name("choice").has_value());
}

TEST_CASE("the separation schema produces the expected instance") {
  FormulaPtr inst = separation(sf::eq(sf::tvar("t"), sf::tvar("t")), {}, Var("t"));
  FormulaPtr expected = elab("forall x. exists y. forall t. (t in y <-> (t in x /\\ t = t))");
  CHECK(alpha_eq(inst, expected));
}

TEST_CASE("schema binders avoid payload names") {
  // The payload uses x and y freely (as declared parameters), so the shape's
  // own bound variables must be renamed away from them.
  SFormulaPtr pred =
      sf::land(sf::mem(sf::tvar("x"), sf::tvar("t")), sf::mem(sf::tvar("y"), sf::tvar("t")));
  FormulaPtr inst = separation(pred, {Var("x"), Var("y")}, Var("t"));
  CHECK(free_vars(inst).empty());
  CHECK(holds(inst, Universe::rank(3)));
}

TEST_CASE("schema payloads are validated") {
  CHECK_THROWS_AS(separation(sf::mem(sf::tvar("s"), sf::tvar("t")), {}, Var("t")),
                  std::invalid_argument);
  CHECK_THROWS_AS(separation(sf::top(), {Var("t")}, Var("t")), std::invalid_argument);
  CHECK_THROWS_AS(separation(sf::top(), {Var("p"), Var("p")}, Var("t")),
                  std::invalid_argument);
  CHECK_THROWS_AS(replacement(sf::top(), {}, Var("x"), Var("x")), std::invalid_argument);
  CHECK_THROWS_AS(replacement(sf::mem(sf::tvar("q"), sf::tvar("x")), {}, Var("x"), Var("y")),
                  std::invalid_argument);
}

TEST_CASE("extensionality, foundation, and union hold among the sixteen sets") {
  Universe v4 = Universe::rank(4);
  CHECK(holds(axiom(Axiom::Extensionality), v4));
  CHECK(holds(axiom(Axiom::Foundation), v4));
  CHECK(holds(axiom(Axiom::Union), v4));
}

TEST_CASE("separation instances hold among the sixteen sets") {
  Universe v4 = Universe::rank(4);
  Var t("t");
  std::vector<SFormulaPtr> preds = {
      sf::eq(sf::tvar(t), sf::tvar(t)),
      sf::lnot(sf::eq(sf::tvar(t), sf::tvar(t))),
      sf::eq(sf::tvar(t), sf::zero()),
      sf::exists(Var("s"), sf::mem(sf::tvar("s"), sf::tvar(t))),
  };
  for (const SFormulaPtr& p : preds) CHECK(holds(separation(p, {}, t), v4));
  // a parameterized instance
  SFormulaPtr with_param = sf::mem(sf::tvar("p"), sf::tvar(t));
  CHECK(holds(separation(with_param, {Var("p")}, t), v4));
}

TEST_CASE("pairing fails among the sixteen sets with a top-rank witness") {
  Universe v4 = Universe::rank(4);
  CHECK_FALSE(holds(axiom(Axiom::Pairing), v4));
  // the open matrix pins the witness: {x,y} outgrows the rank once y = {{{}}}
  Verdict v = refute("exists z. forall t. (t in z <-> (t = x \\/ t = y))", v4);
  REQUIRE_FALSE(v.valid);
  CHECK(v.counterexample.at(Var("x")).code == 0);
  CHECK(v.counterexample.at(Var("y")).code == 4);
}

TEST_CASE("powerset fails among the sixteen sets with a top-rank witness") {
  Universe v4 = Universe::rank(4);
  CHECK_FALSE(holds(axiom(Axiom::Powerset), v4));
  Verdict v = refute("exists z. forall x. (x in z <-> x sub y)", v4);
  REQUIRE_FALSE(v.valid);
  CHECK(v.counterexample.at(Var("y")).code == 4);
}

TEST_CASE("infinity fails in every finite rank") {
  for (int n = 2; n <= 4; ++n) CHECK_FALSE(holds(axiom(Axiom::Infinity), Universe::rank(n)));
}

TEST_CASE("pairing and powerset hold in the small ranks their witnesses fit") {
  // Below the top rank every pair and every powerset of the previous rank
  // exists, so the closures over a smaller outer universe are fine.
  Universe v4 = Universe::rank(4);
  EvalOptions two;
  two.closure_universe = Universe::rank(2);
  Obligation pair_matrix;
  pair_matrix.name = "pair-matrix";
  pair_matrix.goal = canonicalize(elab("exists z. forall t. (t in z <-> (t = x \\/ t = y))"));
  CHECK(check(pair_matrix, v4, two).valid);

  Obligation pow_matrix;
  pow_matrix.name = "powerset-matrix";
  pow_matrix.goal = canonicalize(elab("exists z. forall x. (x in z <-> x sub y)"));
  EvalOptions three;
  three.closure_universe = Universe::rank(3);
  CHECK(check(pow_matrix, v4, three).valid);
}

TEST_CASE("replacement instances behave like their image sets") {
  Universe v4 = Universe::rank(4);
  // identity and constant-empty images never outgrow a rank
  SFormulaPtr ident = sf::eq(sf::tvar("y"), sf::tvar("x"));
  CHECK(holds(replacement(ident, {}, Var("x"), Var("y")), Universe::rank(3)));
  CHECK(holds(replacement(ident, {}, Var("x"), Var("y")), v4));
  SFormulaPtr to_zero = sf::eq(sf::tvar("y"), sf::zero());
  CHECK(holds(replacement(to_zero, {}, Var("x"), Var("y")), v4));

  // the singleton image {x} sits one level above x, so collecting the
  // images escapes any fixed finite rank: {{{}}} maps to a set whose
  // container would need code 2^4
  SFormulaPtr to_sing = sf::eq(sf::tvar("y"), sf::sing(sf::tvar("x")));
  CHECK_FALSE(holds(replacement(to_sing, {}, Var("x"), Var("y")), Universe::rank(3)));
  CHECK_FALSE(holds(replacement(to_sing, {}, Var("x"), Var("y")), v4));

  // union lowers rank, so its images can always be collected
  SFormulaPtr to_union = sf::eq(sf::tvar("y"), sf::un(sf::tvar("x")));
  CHECK(holds(replacement(to_union, {}, Var("x"), Var("y")), Universe::rank(3)));
  CHECK(holds(replacement(to_union, {}, Var("x"), Var("y")), v4));

  // successor raises it: already {sigma({})} = {{{}}} has code 2, outside
  // the two-element rank, and each later rank fails on its own top sets
  SFormulaPtr to_succ = sf::eq(sf::tvar("y"), sf::sigma(sf::tvar("x")));
  CHECK_FALSE(holds(replacement(to_succ, {}, Var("x"), Var("y")), Universe::rank(2)));
  CHECK_FALSE(holds(replacement(to_succ, {}, Var("x"), Var("y")), v4));
}

TEST_CASE("foundation's empty-set guard uses the zero unfolding") {
  // x != 0 must elaborate through the empty-set definition, not a literal
  FormulaPtr f = axiom(Axiom::Foundation);
  CHECK(free_vars(f).empty());
  CHECK(holds(f, Universe::rank(2)));
  CHECK(holds(f, Universe::rank(3)));
}
