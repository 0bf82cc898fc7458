#include "zfcat/dst.hpp"

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

const Universe v2 = Universe::rank(2);
const Universe v3 = Universe::rank(3);
const Universe v4 = Universe::rank(4);
const Universe v5 = Universe::rank(5);

}  // namespace

TEST_CASE("mk_class accepts exactly single-variable contexts") {
  CHECK_NOTHROW(cls1("x", "x = 0"));
  CHECK_THROWS_AS(mk_class(FormulaInContext{{Var("x"), Var("y")}, elab("x = y")}),
                  std::invalid_argument);
  // Free variable escaping the context.
  CHECK_THROWS_AS(mk_class(Var("x"), elab("x = y")), std::invalid_argument);
}

TEST_CASE("set_obligation states exists z forall x (x in z <-> P)") {
  DefinableClass a = cls1("x", "x = 0");
  Obligation ob = set_obligation(a);

  CHECK(ob.name.rfind("set_", 0) == 0);
  CHECK(ob.provenance == "set_obligation");
  CHECK(ob.hyps.empty());
  REQUIRE(ob.goal->kind == Formula::Kind::Exists);
  const FormulaPtr& inner = ob.goal->lhs;
  REQUIRE(inner->kind == Formula::Kind::Forall);
  REQUIRE(inner->lhs->kind == Formula::Kind::Iff);
  CHECK(inner->lhs->lhs->kind == Formula::Kind::Mem);
  CHECK(struct_eq(inner->lhs->rhs, a.cls.body));

  // Same claim, same name.
  CHECK(set_obligation(a).name == ob.name);
  CHECK(definable_set(a).obligation.name == ob.name);
}

TEST_CASE("set obligations separate sets from proper classes") {
  // {x | x = 0} is a set: witness {0}.
  CHECK(vcheck(set_obligation(cls1("x", "x = 0")), v3));
  // {x | x = x} would be the universal set; no member of V_2 contains both
  // of V_2's elements.
  CHECK_FALSE(vcheck(set_obligation(cls1("x", "x = x")), v2));
  // {x | ~(x = x)} is empty, witnessed by 0 even in the smallest universes.
  CHECK(vcheck(set_obligation(cls1("x", "~(x = x)")), v2));
  CHECK(vcheck(set_obligation(cls1("x", "~(x = x)")), v3));
}

TEST_CASE("dst terminal is the one-element class at 0") {
  DefinableClass t = dst_terminal();
  CHECK(t.cls.ctx.size() == 1);
  CHECK(sat_codes(t, v2) == std::vector<std::uint64_t>{0});
  CHECK(vcheck(set_obligation(t), v3));

  // The arrow from {x | x = 1} sending everything to 0 satisfies all three
  // conditions.
  DefinableClass a = cls1("x", "x = 1");
  FormulaInContext rel = mk_object({Var("s"), Var("t")}, elab("s = 1 /\\ t = 0"));
  ArrowResult to_t = mk_arrow(a.cls, t.cls, rel);
  CHECK(all_valid(to_t.obligations, v3));
}

TEST_CASE("dst product pairs satisfying elements") {
  DefinableClass a = cls1("x", "x = 0");

  SUBCASE("square of the terminal class") {
    DstProduct p = dst_product(a, cls1("x", "x = 0"));
    CHECK(p.obj.cls.ctx.size() == 1);
    // <0,0> = {{0}} has code 2.
    CHECK(sat_codes(p.obj, v4) == std::vector<std::uint64_t>{2});
    REQUIRE(p.obligations.size() == 6);
    CHECK(p.obligations[0].provenance == "dst_product");
    CHECK(all_valid(p.obligations, v4));
  }

  SUBCASE("one by two") {
    DstProduct p = dst_product(a, cls1("y", "y = 0 \\/ y = 1"));
    // <0,0> = 2 and <0,1> = {{0},{0,1}} = 10.
    CHECK(sat_codes(p.obj, v4) == std::vector<std::uint64_t>{2, 10});
    CHECK(all_valid(p.obligations, v4));
  }

  SUBCASE("counts multiply when every pair stays in range") {
    DefinableClass left = mk_class(
        Var("x"), elaborate(sf::lor(sf::eq(sf::tvar("x"), sf::one()),
                                    sf::eq(sf::tvar("x"), sf::sing(sf::one())))));
    DefinableClass right = cls1("y", "y = 0 \\/ y = 1");
    CHECK(sat_codes(left, v3).size() == 2);
    DstProduct p = dst_product(left, right);
    CHECK(sat_codes(p.obj, v5).size() == 4);
  }
}

TEST_CASE("dst exponential counts functions between satisfying sets") {
  DefinableClass a = cls1("x", "x = 0");
  DefinableClass b = cls1("y", "y = 0");

  SUBCASE("one function from a one-element set to itself") {
    DstExponential e = dst_exponential(a, b);
    CHECK(e.obj.cls.ctx.size() == 1);
    // {<0,0>} = {2} has code 4.
    CHECK(sat_codes(e.obj, v4) == std::vector<std::uint64_t>{4});
    REQUIRE(e.obligations.size() == 3);
    CHECK(e.obligations[0].provenance == "dst_exponential");
    CHECK(all_valid(e.obligations, v4));
  }

  SUBCASE("empty domain leaves only the empty function") {
    DstExponential e = dst_exponential(cls1("x", "~(x = x)"), b);
    CHECK(sat_codes(e.obj, v2) == std::vector<std::uint64_t>{0});
  }

  SUBCASE("two choices of value give two functions") {
    DstExponential e = dst_exponential(a, cls1("y", "y = 0 \\/ y = 1"));
    // {<0,0>} = 4 and {<0,1>} = {10} = 1024; 2^1 functions in total.
    CHECK(sat_codes(e.obj, v5) == std::vector<std::uint64_t>{4, 1024});
  }
}
