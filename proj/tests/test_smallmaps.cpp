#include "zfcat/smallmaps.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "zfcat/canonical.hpp"
#include "zfcat/elaborate.hpp"
#include "zfcat/hf.hpp"
#include "zfcat/parser.hpp"
#include "zfcat/surface.hpp"

using namespace zfcat;

namespace {

FormulaPtr elab(const std::string& s) { return elaborate(parse(s)); }

DefinableClass cls1(const std::string& v, const std::string& body) {
  return mk_class(Var(v), elab(body));
}

Verdict vcheck(const Obligation& ob, const Universe& u) {
  return check(canonicalize(ob), u);
}

// Free variables of the obligation range over `outer`, inner quantifiers
// over `u`; used where a construction's witnesses outrank its inputs.
Verdict vcheck(const Obligation& ob, const Universe& u, const Universe& outer) {
  EvalOptions opts;
  opts.closure_universe = outer;
  return check(canonicalize(ob), u, opts);
}

bool all_valid(const std::vector<Obligation>& obs, const Universe& u) {
  for (const Obligation& ob : obs)
    if (!vcheck(ob, u)) return false;
  return true;
}

std::vector<std::uint64_t> sat_codes(const DefinableClass& a, const Universe& u) {
  std::vector<std::uint64_t> out;
  for (const HFSet& e : satisfying(canonicalize(a.cls.body), a.cls.ctx[0], u))
    out.push_back(e.code);
  return out;
}

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

const Obligation& by_role(const std::vector<Obligation>& obs, const std::string& role) {
  for (const Obligation& ob : obs)
    if (ob.name.rfind(role + "_", 0) == 0) return ob;
  REQUIRE(false);
  return obs.front();
}

const Universe v1 = Universe::rank(1);
const Universe v2 = Universe::rank(2);
const Universe v3 = Universe::rank(3);
const Universe v4 = Universe::rank(4);

}  // namespace

TEST_CASE("smallness obligations separate set fibers from class fibers") {
  DefinableClass a0 = cls1("x", "x = 0");

  Obligation id_small = smallness_obligation(identity(a0.cls));
  CHECK(id_small.name.rfind("smallness_", 0) == 0);
  CHECK(id_small.provenance == "smallness_obligation");
  CHECK(id_small.goal->kind == Formula::Kind::Forall);
  CHECK(vcheck(id_small, v3));

  // The fiber of {x | x = x} -> 1 over the point is the whole universe,
  // and no member of V_2 contains both of V_2's elements.
  SetVsSmall univ = small_iff_set(cls1("x", "x = x"));
  CHECK_FALSE(vcheck(univ.smallness, v2));
  CHECK_FALSE(vcheck(univ.set, v2));

  // The singleton map has singleton fibers.
  CHECK(vcheck(smallness_obligation(initial_zf_algebra().succ), v4));

  // Wider contexts must be collapsed before asking for smallness.
  ProductResult pr = product(a0.cls, cls1("y", "y = 1").cls);
  CHECK_THROWS_AS(smallness_obligation(pr.proj1), std::invalid_argument);

  SmallnessWitness w = small_arrow(identity(a0.cls), "corpus");
  CHECK(w.obligation.provenance == "corpus");
  CHECK(w.obligation.name == id_small.name);
}

TEST_CASE("corpus monos are small and smallness survives composition") {
  DefinableClass a0 = cls1("x", "x = 0");
  DefinableClass a01 = cls1("x", "x = 0 \\/ x = 1");
  ZFAlgebra alg = initial_zf_algebra();

  std::vector<Arrow> monos = {
      universal_mono(a0).arrow,
      universal_mono(a01).arrow,
      identity(a01.cls),
      subobject_classifier(),
  };
  for (const Arrow& m : monos) {
    CHECK(vcheck(mono_obligation(m), v4));
    CHECK(vcheck(smallness_obligation(m), v4));
  }

  // Compositions of small corpus arrows stay small.
  CHECK(vcheck(smallness_obligation(compose(universal_mono(a0).arrow, alg.succ)), v4));
  CHECK(vcheck(smallness_obligation(compose(alg.succ, alg.succ)), v4));

  // A non-injective arrow fails the mono claim with a concrete witness.
  SetVsSmall bang = small_iff_set(a01);
  Arrow collapse_two{a01.cls, dst_terminal().cls,
                     mk_object({Var("x1"), Var("y1")},
                               elab("(x1 = 0 \\/ x1 = 1) /\\ y1 = 0"))};
  Verdict not_mono = vcheck(mono_obligation(collapse_two), v3);
  CHECK_FALSE(not_mono);
  CHECK_FALSE(not_mono.counterexample.empty());
  CHECK(vcheck(bang.smallness, v3));
}

TEST_CASE("universal monos embed a class into the class of everything") {
  DefinableClass a0 = cls1("x", "x = 0");
  MonoResult m = universal_mono(a0);

  std::set<std::vector<std::uint64_t>> graph{{0, 0}};
  CHECK(sat_tuples(m.arrow.rel, v2) == graph);
  REQUIRE(m.obligations.size() == 4);
  CHECK(all_valid(m.obligations, v3));

  // Nothing satisfies the empty class, so its mono has the empty graph and
  // every obligation holds vacuously.
  MonoResult e = universal_mono(cls1("x", "~(x = x)"));
  CHECK(sat_tuples(e.arrow.rel, v2).empty());
  REQUIRE(e.obligations.size() == 4);
  CHECK(all_valid(e.obligations, v3));
}

TEST_CASE("pullbacks of small corpus arrows stay small") {
  DefinableClass a0 = cls1("x", "x = 0");
  DefinableClass a01 = cls1("x", "x = 0 \\/ x = 1");

  PullbackResult pb = pullback(universal_mono(a0).arrow, universal_mono(a01).arrow);
  CollapseResult sq = collapse_context(pb.obj);

  // The two monos into {x | x = x} intersect in the single point 0, packed
  // as the pair <0,0>.
  CHECK(sat_codes(mk_class(sq.obj), v4) == std::vector<std::uint64_t>{2});

  Arrow leg = compose(sq.iso_inv, pb.p2);
  CHECK(vcheck(smallness_obligation(leg), v4));
}

TEST_CASE("power classes count subsets and carry valid inclusion data") {
  DefinableClass a0 = cls1("x", "x = 0");
  PowerData pd = power_data(a0);

  CHECK(sat_codes(pd.ps, v3) == std::vector<std::uint64_t>{0, 1});
  // The only membership pair is <0,{0}>.
  CHECK(sat_codes(pd.mem, v4) == std::vector<std::uint64_t>{10});
  // X x PS holds <0,{}> and <0,{0}>.
  CHECK(sat_codes(pd.prod, v4) == std::vector<std::uint64_t>{2, 10});

  REQUIRE(pd.obligations.size() == 4);
  CHECK(vcheck(by_role(pd.obligations, "typing"), v4));
  CHECK(vcheck(by_role(pd.obligations, "uniqueness"), v4));
  CHECK(vcheck(by_role(pd.obligations, "totality"), v4));

  // The projection <x,y> |-> y has fiber {<0,{0}>} over {0}, and that
  // fiber's set {<0,{0}>} has code 1024: present only past V_4, so the
  // smallness claim needs a universe reaching that code.
  CHECK_FALSE(vcheck(pd.second_leg.obligation, v4));
  CHECK(vcheck(pd.second_leg.obligation, Universe::code_prefix(1100)));

  // |PS(X)| = 2^|X| whenever every subset of X's extension fits the
  // universe.
  DefinableClass none = cls1("x", "~(x = x)");
  DefinableClass a01 = cls1("x", "x = 0 \\/ x = 1");
  DefinableClass asub = cls1("x", "x sub 1");
  CHECK(sat_codes(power_data(none).ps, v4).size() == 1);
  CHECK(sat_codes(power_data(a0).ps, v4).size() == 2);
  CHECK(sat_codes(power_data(a01).ps, v4).size() == 4);
  CHECK(sat_codes(power_data(asub).ps, v4).size() == 4);
}

TEST_CASE("representing arrows recover relations through membership") {
  DefinableClass a0 = cls1("x", "x = 0");
  PowerData pd = power_data(a0);
  const Var x = Var("x");
  const Var y = Var("y");
  std::map<Var, Var> to_y{{pd.ps.cls.ctx[0], y}};
  FormulaPtr ps_at_y = substitute(pd.ps.cls.body, to_y);

  SUBCASE("membership restricted to X represents as the identity on PS") {
    FormulaInContext r = mk_object(
        {x, y}, land(land(elab("x = 0"), mem(x, y)), ps_at_y));
    RepresentedRelation rep = representing_arrow(a0, pd.ps, r);

    CHECK(vcheck(rep.smallness, v3));
    CHECK(all_valid(rep.obligations, v3));
    CHECK(vcheck(rep.square, v3));

    std::set<std::vector<std::uint64_t>> diag{{0, 0}, {1, 1}};
    CHECK(sat_tuples(rep.rho.rel, v3) == diag);
    CHECK(vcheck(equiv_obligation(rep.rho, identity(pd.ps.cls)), v3));

    // Exhaustive uniqueness: of the four V_3 functions PS -> PS, only the
    // identity graph fits the square.
    const char* graphs[4] = {
        "(y1 = 0 /\\ y2 = 0) \\/ (y1 = 1 /\\ y2 = 0)",
        "(y1 = 0 /\\ y2 = 0) \\/ (y1 = 1 /\\ y2 = 1)",
        "(y1 = 0 /\\ y2 = 1) \\/ (y1 = 1 /\\ y2 = 0)",
        "(y1 = 0 /\\ y2 = 1) \\/ (y1 = 1 /\\ y2 = 1)",
    };
    for (int i = 0; i < 4; ++i) {
      Arrow cand{pd.ps.cls, pd.ps.cls,
                 mk_object({Var("y1"), Var("y2")}, elab(graphs[i]))};
      CHECK(bool(vcheck(representation_square(pd.ps, r, cand), v3)) == (i == 1));
    }
  }

  SUBCASE("the empty relation represents as the constant-empty arrow") {
    FormulaInContext r = mk_object({x, y}, land(elab("~(x = x)"), ps_at_y));
    RepresentedRelation rep = representing_arrow(a0, pd.ps, r);

    CHECK(vcheck(rep.smallness, v3));
    CHECK(all_valid(rep.obligations, v3));
    CHECK(vcheck(rep.square, v3));

    std::set<std::vector<std::uint64_t>> constant{{0, 0}, {1, 0}};
    CHECK(sat_tuples(rep.rho.rel, v3) == constant);
  }
}

TEST_CASE("the subset order lists inclusion pairs over the power class") {
  DefinableClass a0 = cls1("x", "x = 0");
  SubsetData sd = subset_arrow(a0);

  // <{},{}>, <{},{0}> and <{0},{0}>: three inclusion pairs, two of them
  // reflexive.
  CHECK(sat_codes(sd.dom, v4) == std::vector<std::uint64_t>{2, 4, 10});
  CHECK(sat_codes(sd.prod, v4) == std::vector<std::uint64_t>{2, 4, 10, 12});

  REQUIRE(sd.obligations.size() == 4);
  CHECK(vcheck(by_role(sd.obligations, "typing"), v4));
  CHECK(vcheck(by_role(sd.obligations, "uniqueness"), v4));
  CHECK(vcheck(by_role(sd.obligations, "totality"), v4));

  // Fiber over {0}: {<{},{0}>, <{0},{0}>}, a set of code 1040; as with the
  // power data, the witness outranks V_4.
  CHECK_FALSE(vcheck(sd.second_leg.obligation, v4));
  CHECK(vcheck(sd.second_leg.obligation, Universe::code_prefix(1100)));
}

TEST_CASE("the initial algebra's successor and order check out at small ranks") {
  ZFAlgebra alg = initial_zf_algebra();

  std::set<std::vector<std::uint64_t>> sigma{{0, 1}, {1, 2}};
  CHECK(sat_tuples(alg.succ.rel, v3) == sigma);

  CHECK(vcheck(by_role(alg.obligations, "typing"), v3));
  CHECK(vcheck(by_role(alg.obligations, "uniqueness"), v3));

  // Totality escapes a truncated universe ({2} has code 4), so the free
  // variable must stay a rank below the witness search.
  Verdict escape = vcheck(by_role(alg.obligations, "totality"), v3);
  CHECK_FALSE(escape);
  CHECK(escape.counterexample.begin()->second.code >= 2);
  CHECK(vcheck(by_role(alg.obligations, "totality"), v3, v2));
  CHECK(vcheck(by_role(alg.obligations, "totality"), v4, v3));

  CHECK(vcheck(alg.reflexivity, v3, v1));
  CHECK(vcheck(alg.reflexivity, v4, v2));

  // Order data over the whole universe: the inclusion pairs of code < 16.
  CHECK(sat_codes(mk_class(alg.order.dom), v4) == std::vector<std::uint64_t>{2, 4, 10});
  CHECK(all_valid(arrow_obligations(alg.order), v4));

  // Same data, same names.
  ZFAlgebra again = initial_zf_algebra();
  REQUIRE(again.obligations.size() == alg.obligations.size());
  for (std::size_t i = 0; i < alg.obligations.size(); ++i)
    CHECK(again.obligations[i].name == alg.obligations[i].name);
}

TEST_CASE("suprema along small arrows union the family's values") {
  DefinableClass a0 = cls1("x", "x = 0");
  ZFAlgebra alg = initial_zf_algebra();
  Arrow into = universal_mono(a0).arrow;
  Arrow lam = compose(into, alg.succ);
  SmallnessWitness j = small_arrow(identity(a0.cls));

  SupResult s = sup_along(j, lam);

  // Along the identity the sup at 0 unites {sigma(0)} = {{0}}, giving {0}.
  std::set<std::vector<std::uint64_t>> graph{{0, 1}};
  CHECK(sat_tuples(s.sup.rel, v3) == graph);
  CHECK(all_valid(s.obligations, v4));

  SUBCASE("an empty family takes every value to the empty set") {
    DefinableClass none = cls1("x", "~(x = x)");
    Arrow jf{none.cls, a0.cls,
             mk_object({Var("x1"), Var("y1")}, elab("~(x1 = x1) /\\ y1 = 0"))};
    Arrow lamf{none.cls, alg.carrier,
               mk_object({Var("x1"), Var("u1")}, elab("~(x1 = x1) /\\ u1 = u1"))};
    SupResult se = sup_along(small_arrow(jf), lamf);
    std::set<std::vector<std::uint64_t>> empty_graph{{0, 0}};
    CHECK(sat_tuples(se.sup.rel, v3) == empty_graph);
    CHECK(all_valid(se.obligations, v3));
  }

  SUBCASE("test squares validate both directions of the defining property") {
    std::vector<Obligation> sq = sup_square_obligations(s, identity(a0.cls), lam);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].name.rfind("sup_upper_", 0) == 0);
    CHECK(sq[1].name.rfind("sup_least_", 0) == 0);
    CHECK(all_valid(sq, v3));
    CHECK(all_valid(sq, v4));

    // Against the constantly-empty family both sides of the property go
    // false together.
    Arrow flat{a0.cls, alg.carrier,
               mk_object({Var("x1"), Var("u1")}, elab("x1 = 0 /\\ u1 = 0"))};
    CHECK(all_valid(sup_square_obligations(s, identity(a0.cls), flat), v3));
  }

  SUBCASE("collecting values instead of uniting them fails the property") {
    // Hand-build the wrong sup: u holds the lambda-values themselves, so
    // the value at 0 is {{0}} rather than {0}.
    std::set<std::string> taken;
    Var a = fresh_var("a", taken);
    Var u = fresh_var("u", taken);
    Var b = fresh_var("b", taken);
    Var t = fresh_var("t", taken);
    Arrow idj = identity(a0.cls);
    FormulaPtr fid = substitute(
        idj.rel.body, std::map<Var, Var>{{idj.rel.ctx[0], b}, {idj.rel.ctx[1], a}});
    FormulaPtr flam = substitute(
        lam.rel.body, std::map<Var, Var>{{lam.rel.ctx[0], b}, {lam.rel.ctx[1], t}});
    FormulaPtr body =
        land(substitute(a0.cls.body, std::map<Var, Var>{{a0.cls.ctx[0], a}}),
             forall(t, iff(mem(t, u), exists(b, land(fid, flam)))));
    Arrow wrong{a0.cls, alg.carrier, mk_object({a, u}, body)};

    std::set<std::vector<std::uint64_t>> collected{{0, 2}};
    CHECK(sat_tuples(wrong.rel, v3) == collected);

    SupResult ws{wrong, idj, lam, {}};
    std::vector<Obligation> sq = sup_square_obligations(ws, identity(a0.cls), lam);
    CHECK(vcheck(sq[0], v3));
    CHECK_FALSE(vcheck(sq[1], v3));
  }

  SUBCASE("mismatched test squares are rejected") {
    DefinableClass a1 = cls1("x", "x = 1");
    CHECK_THROWS_AS(sup_square_obligations(s, identity(a1.cls), lam),
                    std::invalid_argument);
    Arrow shifted{a1.cls, alg.carrier, lam.rel};
    CHECK_THROWS_AS(sup_along(j, shifted), std::invalid_argument);
  }
}

TEST_CASE("set claims and smallness claims give matching verdicts") {
  std::vector<DefinableClass> corpus = {
      cls1("x", "x = 0"),          cls1("x", "x = 1"),
      cls1("x", "x = 0 \\/ x = 1"), cls1("x", "x sub 1"),
      cls1("x", "x = x"),          cls1("x", "~(x = x)"),
      power_data(cls1("x", "x = 0")).ps,
      dst_terminal(),
  };
  for (const DefinableClass& a : corpus) {
    SetVsSmall pair = small_iff_set(a);
    CHECK_FALSE(pair.smallness.needs_infinity);
    for (const Universe& u : {v3, v4})
      CHECK(bool(vcheck(pair.smallness, u)) == bool(vcheck(pair.set, u)));
  }

  // The finite ordinals: a set only once Infinity is around, so both
  // claims fail in every truncated universe, and the pair says so.
  DefinableClass nat = cls1("x", "Nat(x)");
  CHECK(sat_codes(nat, v4) == std::vector<std::uint64_t>{0, 1, 3, 11});
  SetVsSmall npair = small_iff_set(nat, true);
  CHECK(npair.smallness.needs_infinity);
  CHECK(npair.set.needs_infinity);
  CHECK_FALSE(vcheck(npair.smallness, v4));
  CHECK_FALSE(vcheck(npair.set, v4));
}
