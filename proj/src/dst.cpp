#include "zfcat/dst.hpp"

#include <set>
#include <stdexcept>
#include <utility>

#include "zfcat/elaborate.hpp"
#include "zfcat/surface.hpp"

namespace zfcat {

namespace {

std::set<std::string> names_in(const FormulaPtr& f, std::initializer_list<Var> extra) {
  std::set<std::string> out = all_names(f);
  for (const Var& v : extra) out.insert(v.name);
  return out;
}

}  // namespace

DefinableClass mk_class(Var x, FormulaPtr body) {
  return DefinableClass{mk_object({std::move(x)}, std::move(body))};
}

DefinableClass mk_class(const FormulaInContext& f) {
  if (f.ctx.size() != 1)
    throw std::invalid_argument("mk_class: context must be a single variable");
  return DefinableClass{mk_object(f.ctx, f.body)};
}

Obligation set_obligation(const DefinableClass& a) {
  const Var& x = a.cls.ctx[0];
  std::set<std::string> avoid = names_in(a.cls.body, {x});
  Var z = fresh_var("z", avoid);
  FormulaPtr goal = exists(z, forall(x, iff(mem(x, z), a.cls.body)));
  return mk_obligation("set", {}, std::move(goal), "set_obligation");
}

DefinableSetWitness definable_set(const DefinableClass& a) {
  return DefinableSetWitness{a, set_obligation(a)};
}

DefinableClass dst_terminal() {
  Var x{"x"};
  return mk_class(x, elaborate(sf::eq(sf::tvar(x), sf::zero())));
}

DstProduct dst_product(const DefinableClass& a, const DefinableClass& b) {
  Var x = a.cls.ctx[0];
  FormulaPtr p = a.cls.body;
  Var y = b.cls.ctx[0];
  FormulaPtr q = b.cls.body;

  std::set<std::string> taken = names_in(p, {x, y});
  for (const std::string& n : all_names(q)) taken.insert(n);
  if (y.name == x.name) {
    Var y2 = fresh_var(y.name, taken);
    q = substitute(q, {{y, y2}});
    y = y2;
    taken.insert(y2.name);
  }
  Var z = fresh_var("z", taken);

  // z = <x,y> /\ P /\ Q, the heart shared by the object and both
  // projections; only the quantifier prefix differs.
  SFormulaPtr heart =
      sf::land(sf::eq(sf::tvar(z), sf::pair(sf::tvar(x), sf::tvar(y))),
               sf::land(sf::from_kernel(p), sf::from_kernel(q)));

  DstProduct out;
  out.obj = mk_class(z, elaborate(sf::exists(x, sf::exists(y, heart))));
  out.proj1 = Arrow{out.obj.cls, a.cls,
                    mk_object({z, x}, elaborate(sf::exists(y, heart)))};
  out.proj2 = Arrow{out.obj.cls, b.cls,
                    mk_object({z, y}, elaborate(sf::exists(x, heart)))};
  for (const Obligation& ob : arrow_obligations(out.proj1, "dst_product"))
    out.obligations.push_back(ob);
  for (const Obligation& ob : arrow_obligations(out.proj2, "dst_product"))
    out.obligations.push_back(ob);
  return out;
}

DstExponential dst_exponential(const DefinableClass& a, const DefinableClass& b) {
  const Var& x = a.cls.ctx[0];
  const FormulaPtr& p = a.cls.body;
  const Var& y = b.cls.ctx[0];
  const FormulaPtr& q = b.cls.body;

  std::set<std::string> taken = names_in(p, {x, y});
  for (const std::string& n : all_names(q)) taken.insert(n);
  Var f = fresh_var("f", taken);
  taken.insert(f.name);
  Var s = fresh_var("s", taken);
  taken.insert(s.name);
  Var s2 = fresh_var("s", taken);
  taken.insert(s2.name);

  // Fun(f) /\ forall s. (s in dom f <-> P(s)) /\ forall s'. (s' in ran f -> Q(s'))
  SFormulaPtr graph_of =
      sf::land(sf::fun(sf::tvar(f)),
               sf::land(sf::forall(s, sf::iff(sf::indom(sf::tvar(s), sf::tvar(f)),
                                              sf::from_kernel(substitute(p, {{x, s}})))),
                        sf::forall(s2, sf::implies(sf::inran(sf::tvar(s2), sf::tvar(f)),
                                                   sf::from_kernel(substitute(q, {{y, s2}}))))));

  DstExponential out;
  out.obj = mk_class(f, elaborate(graph_of));

  // Evaluation lives on the pairing object <f,x>; its relation re-states the
  // pair decomposition and adds <x,y'> in f.
  DstProduct dom = dst_product(out.obj, a);
  const Var& pairv = dom.obj.cls.ctx[0];
  taken.insert(pairv.name);
  Var y2 = fresh_var(y.name, taken);

  SFormulaPtr rel_body = sf::exists(
      f, sf::exists(
             x, sf::land(sf::eq(sf::tvar(pairv), sf::pair(sf::tvar(f), sf::tvar(x))),
                         sf::land(graph_of,
                                  sf::land(sf::from_kernel(p),
                                           sf::mem(sf::pair(sf::tvar(x), sf::tvar(y2)),
                                                   sf::tvar(f)))))));
  out.eval = Arrow{dom.obj.cls, b.cls, mk_object({pairv, y2}, elaborate(rel_body))};
  out.obligations = arrow_obligations(out.eval, "dst_exponential");
  return out;
}

}  // namespace zfcat
