#include "doctest.h"

#include <random>

#include "zfcat/formula.hpp"

using namespace zfcat;

namespace {

Var v(const char* n) { return Var{n}; }

// Pseudo-random kernel formulas over a small variable pool, for property
// checks.  Depth-bounded; leans on atoms so substitution has work to do.
FormulaPtr random_formula(std::mt19937& rng, int depth) {
  static const char* pool[] = {"x", "y", "z", "u", "w"};
  auto pick = [&]() { return Var{pool[rng() % 5]}; };
  if (depth <= 0 || rng() % 4 == 0) {
    switch (rng() % 4) {
      case 0: return mem(pick(), pick());
      case 1: return eq(pick(), pick());
      case 2: return top();
      default: return bot();
    }
  }
  switch (rng() % 7) {
    case 0: return lnot(random_formula(rng, depth - 1));
    case 1: return land(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 2: return lor(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 3: return implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return forall(pick(), random_formula(rng, depth - 1));
    default: return exists(pick(), random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("free variables respect binding") {
  FormulaPtr f = exists(v("x"), land(mem(v("x"), v("y")), eq(v("x"), v("x"))));
  auto fv = free_vars(f);
  CHECK(fv.size() == 1);
  CHECK(fv.count(v("y")) == 1);

  FormulaPtr g = land(mem(v("x"), v("y")), exists(v("x"), mem(v("x"), v("z"))));
  fv = free_vars(g);
  CHECK(fv.count(v("x")) == 1);
  CHECK(fv.count(v("y")) == 1);
  CHECK(fv.count(v("z")) == 1);
  CHECK(fv.size() == 3);
}

TEST_CASE("fresh_var avoids the given names and records its pick") {
  std::set<std::string> avoid{"x", "x1", "x2"};
  Var f = fresh_var("x", avoid);
  CHECK(f.name == "x3");
  CHECK(avoid.count("x3") == 1);

  std::set<std::string> none;
  CHECK(fresh_var("y", none).name == "y");
}

TEST_CASE("substitution is capture avoiding") {
  // (exists y. x in y)[y/x] must not let the inserted y be captured.
  FormulaPtr f = exists(v("y"), mem(v("x"), v("y")));
  FormulaPtr g = substitute(f, {{v("x"), v("y")}});
  CHECK(g->kind == Formula::Kind::Exists);
  CHECK(g->a.name != "y");
  CHECK(g->lhs->a.name == "y");   // the substituted-in free y
  CHECK(g->lhs->b == g->a);       // still bound by the (renamed) binder
  auto fv = free_vars(g);
  CHECK(fv.size() == 1);
  CHECK(fv.count(v("y")) == 1);
}

TEST_CASE("substitution is simultaneous, not sequential") {
  // swap x and y in x in y
  FormulaPtr f = mem(v("x"), v("y"));
  FormulaPtr g = substitute(f, {{v("x"), v("y")}, {v("y"), v("x")}});
  CHECK(g->a.name == "y");
  CHECK(g->b.name == "x");
}

TEST_CASE("alpha equivalence identifies renamings and nothing more") {
  FormulaPtr f = forall(v("x"), implies(mem(v("x"), v("y")), eq(v("x"), v("x"))));
  FormulaPtr g = forall(v("z"), implies(mem(v("z"), v("y")), eq(v("z"), v("z"))));
  CHECK(alpha_eq(f, g));

  // differing free variable
  FormulaPtr h = forall(v("z"), implies(mem(v("z"), v("w")), eq(v("z"), v("z"))));
  CHECK_FALSE(alpha_eq(f, h));

  // bound/free confusion: forall x. x in x vs forall x. x in y
  CHECK_FALSE(alpha_eq(forall(v("x"), mem(v("x"), v("x"))),
                       forall(v("x"), mem(v("x"), v("y")))));
}

TEST_CASE("alpha_compare is a total order refining alpha_eq") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 300; ++i) {
    FormulaPtr a = random_formula(rng, 4);
    FormulaPtr b = random_formula(rng, 4);
    FormulaPtr c = random_formula(rng, 4);
    int ab = alpha_compare(a, b);
    CHECK(ab == -alpha_compare(b, a));
    CHECK((ab == 0) == alpha_eq(a, b));
    // transitivity spot check
    if (ab <= 0 && alpha_compare(b, c) <= 0) CHECK(alpha_compare(a, c) <= 0);
  }
}

TEST_CASE("renaming a bound variable preserves alpha_compare order") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr a = exists(v("x"), random_formula(rng, 3));
    FormulaPtr a2 = exists(v("q"), substitute(a->lhs, {{v("x"), v("q")}}));
    CHECK(alpha_eq(a, a2));
    FormulaPtr b = random_formula(rng, 4);
    CHECK(alpha_compare(a, b) == alpha_compare(a2, b));
  }
}

TEST_CASE("pretty printing parenthesizes by precedence") {
  FormulaPtr f = land(lor(mem(v("x"), v("y")), bot()), lnot(eq(v("x"), v("y"))));
  CHECK(pretty(f) == "(x in y \\/ false) /\\ ~x = y");

  FormulaPtr g = implies(mem(v("x"), v("y")), implies(mem(v("y"), v("z")), mem(v("x"), v("z"))));
  CHECK(pretty(g) == "x in y -> y in z -> x in z");

  FormulaPtr h = forall(v("x"), land(mem(v("x"), v("y")), top()));
  CHECK(pretty(h) == "forall x. x in y /\\ true");
}

TEST_CASE("content_hash is stable across alpha-irrelevant rebuilds and differs on change") {
  FormulaPtr f = exists(v("x"), mem(v("x"), v("y")));
  FormulaPtr g = exists(v("x"), mem(v("x"), v("y")));
  CHECK(content_hash(f) == content_hash(g));
  CHECK(content_hash(f) != content_hash(exists(v("x"), mem(v("x"), v("z")))));
}

TEST_CASE("node_count counts every constructor") {
  CHECK(node_count(top()) == 1);
  CHECK(node_count(mem(v("x"), v("y"))) == 1);
  CHECK(node_count(exists(v("x"), land(top(), bot()))) == 4);
}
