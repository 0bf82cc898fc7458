#include "zfcat/syncat.hpp"

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "zfcat/canonical.hpp"
#include "zfcat/elaborate.hpp"
#include "zfcat/hf.hpp"
#include "zfcat/parser.hpp"

using namespace zfcat;

namespace {

FormulaPtr elab(const std::string& s) { return elaborate(parse(s)); }

FormulaInContext obj1(const std::string& v, const std::string& body) {
  return mk_object({Var(v)}, elab(body));
}

// Rename a relation's context onto the fixed names q1..qn and canonicalize,
// so relations built over different fresh contexts become comparable.
FormulaPtr aligned(const FormulaInContext& r) {
  std::vector<Var> qs;
  for (std::size_t i = 0; i < r.ctx.size(); ++i)
    qs.emplace_back("q" + std::to_string(i + 1));
  std::map<Var, Var> m;
  for (std::size_t i = 0; i < r.ctx.size(); ++i)
    if (r.ctx[i] != qs[i]) m[r.ctx[i]] = qs[i];
  return canonicalize(m.empty() ? r.body : substitute(r.body, m));
}

bool same_arrow(const Arrow& f, const Arrow& g) {
  return alpha_eq(aligned(f.rel), aligned(g.rel));
}

Verdict vcheck(const Obligation& ob, const Universe& u) {
  return check(canonicalize(ob), u);
}

bool all_valid(const std::vector<Obligation>& obs, const Universe& u) {
  for (const Obligation& ob : obs)
    if (!vcheck(ob, u)) return false;
  return true;
}

// Truth table of a multi-variable body over all context assignments.
std::set<std::vector<std::uint64_t>> sat_tuples(const FormulaInContext& a,
                                                const Universe& u) {
  std::set<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> tuple(a.ctx.size(), 0);
  FormulaPtr body = canonicalize(a.body);
  while (true) {
    std::map<Var, HFSet> env;
    for (std::size_t i = 0; i < a.ctx.size(); ++i) env[a.ctx[i]] = HFSet{tuple[i]};
    if (eval(body, env, u)) out.insert(tuple);
    std::size_t pos = tuple.size();
    while (pos > 0 && ++tuple[pos - 1] == u.size()) tuple[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

const Universe v1 = Universe::rank(1);
const Universe v2 = Universe::rank(2);
const Universe v3 = Universe::rank(3);
const Universe v4 = Universe::rank(4);

}  // namespace

TEST_CASE("mk_arrow emits exactly the three conditions") {
  FormulaInContext dom = obj1("x", "x = x");
  FormulaInContext cod = obj1("y", "y = y");
  FormulaInContext rel = mk_object({Var("a"), Var("b")}, elab("b = a"));
  ArrowResult r = mk_arrow(dom, cod, rel);

  REQUIRE(r.obligations.size() == 3);
  const Obligation& typing = r.obligations[0];
  const Obligation& unique = r.obligations[1];
  const Obligation& total = r.obligations[2];

  CHECK(typing.name.rfind("typing_", 0) == 0);
  CHECK(unique.name.rfind("uniqueness_", 0) == 0);
  CHECK(total.name.rfind("totality_", 0) == 0);

  // typing: the relation itself entails both end predicates
  REQUIRE(typing.hyps.size() == 1);
  CHECK(struct_eq(typing.hyps[0], r.arrow.rel.body));
  CHECK(typing.goal->kind == Formula::Kind::And);

  // uniqueness: two codomain copies forced equal
  REQUIRE(unique.hyps.size() == 2);
  CHECK(unique.goal->kind == Formula::Kind::Eq);

  // totality: existential over the codomain copy
  REQUIRE(total.hyps.size() == 1);
  CHECK(total.goal->kind == Formula::Kind::Exists);

  CHECK(all_valid(r.obligations, v4));

  // content-derived names are stable across reconstruction
  ArrowResult again = mk_arrow(dom, cod, rel);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(again.obligations[i].name == r.obligations[i].name);
}

TEST_CASE("a never-defined relation fails totality with a witness") {
  FormulaInContext dom = obj1("x", "x = x");
  FormulaInContext cod = obj1("y", "y = y");
  FormulaInContext rel = mk_object({Var("a"), Var("b")}, elab("~(a = a)"));
  ArrowResult r = mk_arrow(dom, cod, rel);

  Verdict total = vcheck(r.obligations[2], v1);
  REQUIRE_FALSE(total.valid);
  REQUIRE(total.counterexample.size() == 1);
  CHECK(total.counterexample.begin()->second.code == 0);  // the empty set
}

TEST_CASE("mk_arrow rejects malformed input") {
  FormulaInContext dom = obj1("x", "x = x");
  FormulaInContext cod = obj1("y", "y = y");
  CHECK_THROWS_AS(mk_arrow(dom, cod, mk_object({Var("a")}, elab("a = a"))),
                  std::invalid_argument);
  CHECK_THROWS_AS(mk_object({Var("a"), Var("b")}, elab("c = a")),
                  std::invalid_argument);
  CHECK_THROWS_AS(mk_object({Var("a"), Var("a")}, elab("a = a")),
                  std::invalid_argument);
}

TEST_CASE("identity relation canonicalizes to a bare equation") {
  FormulaInContext a = obj1("x", "x = x");
  Arrow id = identity(a);
  REQUIRE(id.rel.ctx.size() == 2);
  CHECK(alpha_eq(aligned(id.rel), eq(Var("q1"), Var("q2"))));
  CHECK(all_valid(arrow_obligations(id), v4));
}

TEST_CASE("identity on the empty context") {
  FormulaInContext a = mk_object({}, elab("forall x. x = x"));
  Arrow id = identity(a);
  CHECK(id.rel.ctx.empty());
  // True-conjoined body, no variables to equate
  CHECK(id.rel.body->kind == Formula::Kind::And);
  CHECK(id.rel.body->lhs->kind == Formula::Kind::True);
  CHECK(all_valid(arrow_obligations(id), v2));
}

TEST_CASE("composition unit laws hold syntactically") {
  FormulaInContext a = obj1("x", "x = x");
  FormulaInContext b = obj1("y", "0 in y");

  // f : a -> b sends x to sigma(x) when that lands in b
  FormulaInContext rel =
      mk_object({Var("s"), Var("t")}, elab("t = sigma(s) /\\ 0 in t"));
  Arrow f = mk_arrow(a, b, rel).arrow;

  CHECK(same_arrow(compose(identity(a), f), f));
  CHECK(same_arrow(compose(f, identity(b)), f));
}

TEST_CASE("composition is associative up to canonical form") {
  FormulaInContext a = obj1("x", "x = x");
  Arrow f = mk_arrow(a, a, mk_object({Var("s"), Var("t")}, elab("t = s"))).arrow;
  Arrow g = mk_arrow(a, a, mk_object({Var("s"), Var("t")}, elab("t = 0"))).arrow;
  Arrow h = mk_arrow(a, a,
                     mk_object({Var("s"), Var("t")}, elab("forall u. (u in t <-> u = s)")))
                .arrow;

  CHECK(same_arrow(compose(compose(f, g), h), compose(f, compose(g, h))));
  CHECK(same_arrow(compose(compose(h, g), f), compose(h, compose(g, f))));
}

TEST_CASE("composition ignores the representative's variable names") {
  FormulaInContext a = obj1("x", "x = x");
  Arrow f = mk_arrow(a, a, mk_object({Var("s"), Var("t")}, elab("t = sigma(s)"))).arrow;
  Arrow f2 = mk_arrow(a, a, mk_object({Var("p"), Var("q")}, elab("q = sigma(p)"))).arrow;
  Arrow g = mk_arrow(a, a, mk_object({Var("s"), Var("t")}, elab("t = Un(s)"))).arrow;

  CHECK(same_arrow(compose(f, g), compose(f2, g)));
}

TEST_CASE("composition requires matching ends") {
  FormulaInContext a = obj1("x", "x = x");
  FormulaInContext b = obj1("y", "y = 0");
  Arrow f = identity(a);
  Arrow g = identity(b);
  CHECK_THROWS_AS(compose(f, g), std::invalid_argument);
}

TEST_CASE("constant arrows compose to the expected graph") {
  FormulaInContext a = obj1("x", "x = x");
  // f sends everything to the empty set, g takes the singleton
  Arrow f = mk_arrow(a, a, mk_object({Var("s"), Var("t")}, elab("t = 0"))).arrow;
  Arrow g = mk_arrow(a, a,
                     mk_object({Var("s"), Var("t")}, elab("forall u. (u in t <-> u = s)")))
                .arrow;
  Arrow comp = compose(f, g);

  // the composite graph is t = {0}, i.e. t = 1
  FormulaInContext direct = mk_object({Var("s"), Var("t")}, elab("t = 1"));
  Obligation same{"", {}, iff(aligned(comp.rel), aligned(direct)), "", false};
  CHECK(check(same, v4).valid);
}

TEST_CASE("equiv_obligation validates and refutes") {
  FormulaInContext a = obj1("x", "x = x");
  Arrow f = mk_arrow(a, a, mk_object({Var("s"), Var("t")}, elab("t = 0"))).arrow;

  CHECK(vcheck(equiv_obligation(f, f), v4).valid);

  // a canonical-form representative of the same arrow
  Arrow fc{f.dom, f.cod, FormulaInContext{f.rel.ctx, canonicalize(f.rel.body)}};
  CHECK(vcheck(equiv_obligation(f, fc), v4).valid);

  Arrow g = mk_arrow(a, a, mk_object({Var("s"), Var("t")}, elab("t = 1"))).arrow;
  Verdict v = vcheck(equiv_obligation(f, g), v2);
  REQUIRE_FALSE(v.valid);
  // canonicalization drops the unused domain copy, leaving one closure
  // variable; the least witness is the empty set, where only f holds
  REQUIRE(v.counterexample.size() == 1);
  CHECK(v.counterexample.begin()->second.code == 0);

  Arrow h = identity(mk_object({Var("z")}, elab("z = 0")));
  CHECK_THROWS_AS(equiv_obligation(f, h), std::invalid_argument);
}

TEST_CASE("product of two copies of the universe") {
  FormulaInContext a = obj1("x", "x = x");
  ProductResult p = product(a, a);

  REQUIRE(p.obj.ctx.size() == 2);
  CHECK(p.obj.ctx[0] != p.obj.ctx[1]);  // second copy freshened
  CHECK(p.obj.body->kind == Formula::Kind::And);

  CHECK(all_valid(arrow_obligations(p.proj1, "product"), v3));
  CHECK(all_valid(arrow_obligations(p.proj2, "product"), v3));
}

TEST_CASE("product with disjoint names keeps them") {
  FormulaInContext a = obj1("x", "x = 0");
  FormulaInContext b = obj1("y", "y = y");
  ProductResult p = product(a, b);
  REQUIRE(p.obj.ctx.size() == 2);
  CHECK(p.obj.ctx[0].name == "x");
  CHECK(p.obj.ctx[1].name == "y");
}

TEST_CASE("product with the terminal is the object itself") {
  FormulaInContext a = obj1("x", "x = x");
  FormulaInContext term = distinguished(Distinguished::Terminal);
  ProductResult p = product(a, term);

  // mediating arrow a -> a*1 : pair x with the empty set
  FormulaPtr med_body = elab("a1 = u /\\ (forall t. ~(t in v))");
  FormulaInContext med_rel = mk_object({Var("a1"), Var("u"), Var("v")}, med_body);
  ArrowResult med = mk_arrow(a, p.obj, med_rel);
  CHECK(all_valid(med.obligations, v3));

  // med ; proj1 is the identity on a
  CHECK(vcheck(equiv_obligation(compose(med.arrow, p.proj1), identity(a)), v3).valid);
  // proj1 ; med is the identity on a*1
  CHECK(vcheck(equiv_obligation(compose(p.proj1, med.arrow), identity(p.obj)), v3).valid);
}

TEST_CASE("distinguished objects have their fixed shapes") {
  FormulaInContext term = distinguished(Distinguished::Terminal);
  FormulaInContext init = distinguished(Distinguished::Initial);

  REQUIRE(term.ctx.size() == 1);
  REQUIRE(init.ctx.size() == 1);
  CHECK(alpha_eq(term.body, elab("forall t. ~(t in x)")));
  CHECK(struct_eq(init.body, lnot(eq(Var("x"), Var("x")))));

  // exactly one inhabitant of the terminal, none of the initial
  CHECK(sat_tuples(term, v3) == std::set<std::vector<std::uint64_t>>{{0}});
  CHECK(sat_tuples(init, v3).empty());

  // the arrow into the terminal exists and is unique
  FormulaInContext a = obj1("x", "x = x");
  FormulaInContext rel =
      mk_object({Var("a1"), Var("b1")}, elab("a1 = a1 /\\ (forall t. ~(t in b1))"));
  ArrowResult bang = mk_arrow(a, term, rel);
  CHECK(all_valid(bang.obligations, v3));

  FormulaInContext rel2 = mk_object({Var("a1"), Var("b1")}, elab("b1 = 0"));
  Arrow bang2 = mk_arrow(a, term, rel2).arrow;
  CHECK(vcheck(equiv_obligation(bang.arrow, bang2), v3).valid);
}

TEST_CASE("pullback of the identity against itself is the diagonal") {
  FormulaInContext a = obj1("x", "x = x");
  Arrow id = identity(a);
  PullbackResult pb = pullback(id, id);

  REQUIRE(pb.obj.ctx.size() == 2);
  std::set<std::vector<std::uint64_t>> expect;
  for (std::uint64_t e = 0; e < v3.size(); ++e) expect.insert({e, e});
  CHECK(sat_tuples(pb.obj, v3) == expect);

  CHECK(all_valid(arrow_obligations(pb.p1, "pullback"), v3));
  CHECK(all_valid(arrow_obligations(pb.p2, "pullback"), v3));
}

TEST_CASE("pullback along an arrow out of the initial object is empty") {
  FormulaInContext a = obj1("x", "x = x");
  FormulaInContext init = distinguished(Distinguished::Initial);
  Arrow f = identity(a);
  Arrow from_init =
      mk_arrow(init, a, mk_object({Var("a1"), Var("b1")}, elab("~(a1 = a1)"))).arrow;

  PullbackResult pb = pullback(f, from_init);
  CHECK(sat_tuples(pb.obj, v3).empty());
}

TEST_CASE("subobject classifier") {
  Arrow t = subobject_classifier();

  CHECK(all_valid(arrow_obligations(t, "subobject_classifier"), v3));
  CHECK(sat_tuples(t.dom, v3) == std::set<std::vector<std::uint64_t>>{{0}});
  CHECK(sat_tuples(t.cod, v3) == std::set<std::vector<std::uint64_t>>{{0}, {1}});

  // mono: equal classifier values come from equal points
  std::set<std::string> taken = all_names(t.rel.body);
  for (const Var& v : t.rel.ctx) taken.insert(v.name);
  Var x2 = fresh_var("m", taken);
  FormulaPtr again = substitute(t.rel.body, {{t.rel.ctx[0], x2}});
  Obligation mono{"mono", {t.rel.body, again}, eq(t.rel.ctx[0], x2), "test", false};
  CHECK(vcheck(mono, v3).valid);
}

TEST_CASE("collapse of a two-variable context") {
  FormulaInContext a =
      mk_object({Var("x"), Var("y")}, elab("x = 0 /\\ y = 0"));
  CollapseResult c = collapse_context(a);

  REQUIRE(c.obj.ctx.size() == 1);
  // exactly the code of <0,0> = {{0}}
  CHECK(sat_tuples(c.obj, v4) == std::set<std::vector<std::uint64_t>>{{2}});

  CHECK(all_valid(arrow_obligations(c.iso, "collapse"), v4));
  CHECK(all_valid(arrow_obligations(c.iso_inv, "collapse"), v4));
  CHECK(vcheck(equiv_obligation(compose(c.iso, c.iso_inv), identity(a)), v4).valid);
}

TEST_CASE("collapse is the identity on one-variable contexts") {
  FormulaInContext a = obj1("x", "0 in x");
  CollapseResult c = collapse_context(a);
  CHECK(c.obj.ctx == a.ctx);
  CHECK(struct_eq(c.obj.body, a.body));
  CHECK(same_arrow(c.iso, identity(a)));
}

TEST_CASE("collapse of a closed formula lands on the terminal") {
  FormulaInContext a = mk_object({}, elab("0 = 0"));
  CollapseResult c = collapse_context(a);

  REQUIRE(c.obj.ctx.size() == 1);
  CHECK(sat_tuples(c.obj, v3) == std::set<std::vector<std::uint64_t>>{{0}});
  CHECK(all_valid(arrow_obligations(c.iso, "collapse"), v3));
  CHECK(all_valid(arrow_obligations(c.iso_inv, "collapse"), v3));
  CHECK(vcheck(equiv_obligation(compose(c.iso, c.iso_inv), identity(a)), v3).valid);
}

TEST_CASE("intersection via pullback matches the textbook intersection") {
  struct Case {
    const char* p;
    const char* q;
    std::set<std::uint64_t> expect;  // satisfiers of P /\ Q[x/y] in V_3
  };
  const Case cases[] = {
      {"x = 0", "y = y", {0}},
      {"x = x", "y = y", {0, 1, 2, 3}},
      {"x = 0", "y = 1", {}},
  };

  for (const Case& tc : cases) {
    CAPTURE(tc.p);
    CAPTURE(tc.q);
    FormulaInContext a = obj1("x", tc.p);
    FormulaInContext b = obj1("y", tc.q);
    IntersectionResult r = intersect_classes(a, b);

    REQUIRE(r.obj.ctx.size() == 3);
    std::set<std::vector<std::uint64_t>> expect;
    for (std::uint64_t e : tc.expect) expect.insert({e, e, e});
    CHECK(sat_tuples(r.obj, v3) == expect);

    CHECK(vcheck(r.iso_witness, v3).valid);
    CHECK(r.iso_witness.name.rfind("intersection_iso_", 0) == 0);
  }

  CHECK_THROWS_AS(
      intersect_classes(mk_object({}, elab("0 = 0")), obj1("y", "y = y")),
      std::invalid_argument);
}
