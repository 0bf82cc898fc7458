#include "zfcat/internal.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "zfcat/elaborate.hpp"
#include "zfcat/surface.hpp"

namespace zfcat {
namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::set<std::string> names_of(const FormulaInContext& a) {
  std::set<std::string> out = all_names(a.body);
  for (const Var& v : a.ctx) out.insert(v.name);
  return out;
}

void merge_names(std::set<std::string>& into, const std::set<std::string>& from) {
  into.insert(from.begin(), from.end());
}

std::set<std::string> names_of(const Arrow& f) {
  std::set<std::string> out = names_of(f.dom);
  merge_names(out, names_of(f.cod));
  merge_names(out, names_of(f.rel));
  return out;
}

std::vector<Var> fresh_copy(const std::vector<Var>& vs, std::set<std::string>& taken) {
  std::vector<Var> out;
  out.reserve(vs.size());
  for (const Var& v : vs) out.push_back(fresh_var(v.name, taken));
  return out;
}

std::vector<Var> concat(std::vector<Var> a, const std::vector<Var>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FormulaPtr rename(const FormulaPtr& body, const std::vector<Var>& from,
                  const std::vector<Var>& to) {
  std::map<Var, Var> m;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i] != to[i]) m[from[i]] = to[i];
  return m.empty() ? body : substitute(body, m);
}

bool object_alpha_eq(const FormulaInContext& a, const FormulaInContext& b) {
  if (a.ctx.size() != b.ctx.size()) return false;
  return alpha_eq(a.body, rename(b.body, b.ctx, a.ctx));
}

}  // namespace

InternalCategory set_internal() {
  using sf::tvar;

  Var x{"x"}, F{"F"}, G{"G"}, J{"J"}, w{"w"};
  Var f{"f"}, f1{"f1"}, f2{"f2"}, z{"z"}, t{"t"}, s{"s"}, s1{"s1"}, s2{"s2"};

  // Fun(fn) /\ ran(fn) sub cod: fn is a function landing inside cod.
  auto fun_into = [&](const Var& fn, const Var& cod) {
    return sf::land(sf::fun(tvar(fn)), sf::ransub(tvar(fn), tvar(cod)));
  };
  // ran(fa) sub dom(fb): fa's outputs are inputs of fb, so fb after fa is
  // defined everywhere fa is.
  auto feeds = [&](const Var& fa, const Var& fb) {
    return sf::forall(t, sf::implies(sf::inran(tvar(t), tvar(fa)),
                                     sf::indom(tvar(t), tvar(fb))));
  };
  // The four conditions making <f,<f1,z>> a composable pair.
  auto pair_conds = [&] {
    return sf::land(sf::fun(tvar(f)),
                    sf::land(sf::fun(tvar(f1)),
                             sf::land(feeds(f, f1), sf::ransub(tvar(f1), tvar(z)))));
  };

  InternalCategory ic;
  ic.c0 = mk_object({x}, eq(x, x));

  SFormulaPtr c1_body = sf::exists(
      f, sf::exists(z, sf::land(sf::eq(tvar(F), sf::pair(tvar(f), tvar(z))),
                                fun_into(f, z))));
  ic.c1 = mk_object({F}, elaborate(c1_body));

  SFormulaPtr cpair_body = sf::exists(
      f, sf::exists(f1, sf::exists(z, sf::land(sf::eq(tvar(J), sf::pair(tvar(f), sf::pair(tvar(f1), tvar(z)))),
                                               pair_conds()))));
  ic.cpair = mk_object({J}, elaborate(cpair_body));

  SFormulaPtr pack_body = sf::exists(
      f, sf::exists(w, sf::exists(f1, sf::exists(z, sf::land(
          sf::eq(tvar(F), sf::pair(tvar(f), tvar(w))),
          sf::land(sf::eq(tvar(G), sf::pair(tvar(f1), tvar(z))),
                   sf::eq(tvar(J), sf::pair(tvar(f), sf::pair(tvar(f1), tvar(z))))))))));
  ic.pairing = mk_object({F, G, J}, elaborate(pack_body));

  SFormulaPtr d0_body = sf::exists(
      f, sf::exists(z, sf::land(sf::eq(tvar(F), sf::pair(tvar(f), tvar(z))),
                                sf::land(fun_into(f, z), sf::domeq(tvar(f), tvar(x))))));
  ic.d0 = Arrow{ic.c1, ic.c0, mk_object({F, x}, elaborate(d0_body))};

  SFormulaPtr d1_body = sf::exists(
      f, sf::land(sf::eq(tvar(F), sf::pair(tvar(f), tvar(z))), fun_into(f, z)));
  ic.d1 = Arrow{ic.c1, ic.c0, mk_object({F, z}, elaborate(d1_body))};

  SFormulaPtr id_body = sf::exists(
      f, sf::land(sf::eq(tvar(F), sf::pair(tvar(f), tvar(x))),
                  sf::forall(t, sf::iff(sf::mem(tvar(t), tvar(f)),
                                        sf::exists(s, sf::land(sf::mem(tvar(s), tvar(x)),
                                                               sf::eq(tvar(t), sf::pair(tvar(s), tvar(s)))))))));
  ic.id = Arrow{ic.c0, ic.c1, mk_object({x, F}, elaborate(id_body))};

  SFormulaPtr graph = sf::forall(
      t, sf::iff(sf::mem(tvar(t), tvar(f2)),
                 sf::exists(s, sf::exists(s1, sf::exists(s2, sf::land(
                     sf::mem(sf::pair(tvar(s), tvar(s1)), tvar(f)),
                     sf::land(sf::mem(sf::pair(tvar(s1), tvar(s2)), tvar(f1)),
                              sf::eq(tvar(t), sf::pair(tvar(s), tvar(s2))))))))));
  SFormulaPtr comp_body = sf::exists(
      f, sf::exists(f1, sf::exists(z, sf::exists(f2, sf::land(
          sf::eq(tvar(J), sf::pair(tvar(f), sf::pair(tvar(f1), tvar(z)))),
          sf::land(pair_conds(),
                   sf::land(sf::eq(tvar(G), sf::pair(tvar(f2), tvar(z))), graph)))))));
  ic.comp = Arrow{ic.cpair, ic.c1, mk_object({J, G}, elaborate(comp_body))};

  // The first component's packaged codomain is not stored in the pair, so
  // the projection reconstructs it as the second function's domain.
  SFormulaPtr p0_body = sf::exists(
      f, sf::exists(f1, sf::exists(z, sf::exists(w, sf::land(
          sf::eq(tvar(J), sf::pair(tvar(f), sf::pair(tvar(f1), tvar(z)))),
          sf::land(pair_conds(),
                   sf::land(sf::domeq(tvar(f1), tvar(w)),
                            sf::eq(tvar(F), sf::pair(tvar(f), tvar(w))))))))));
  ic.p0 = Arrow{ic.cpair, ic.c1, mk_object({J, F}, elaborate(p0_body))};

  SFormulaPtr p1_body = sf::exists(
      f, sf::exists(f1, sf::exists(z, sf::land(
          sf::eq(tvar(J), sf::pair(tvar(f), sf::pair(tvar(f1), tvar(z)))),
          sf::land(pair_conds(), sf::eq(tvar(G), sf::pair(tvar(f1), tvar(z))))))));
  ic.p1 = Arrow{ic.cpair, ic.c1, mk_object({J, G}, elaborate(p1_body))};

  for (const Arrow* a : {&ic.d0, &ic.d1, &ic.id, &ic.comp, &ic.p0, &ic.p1}) {
    std::vector<Obligation> obs = arrow_obligations(*a, "set_internal");
    ic.obligations.insert(ic.obligations.end(), obs.begin(), obs.end());
  }
  return ic;
}

Arrow pair_into_cpair(const InternalCategory& ic, const Arrow& h, const Arrow& k) {
  require(object_alpha_eq(h.cod, ic.c1) && object_alpha_eq(k.cod, ic.c1),
          "pair_into_cpair: both arrows must land in the object of arrows");
  require(object_alpha_eq(h.dom, k.dom), "pair_into_cpair: arrows need a common domain");

  std::set<std::string> taken = names_of(h);
  merge_names(taken, names_of(k));
  merge_names(taken, names_of(ic.pairing));
  std::vector<Var> xs = fresh_copy(h.dom.ctx, taken);
  Var fv = fresh_var("F", taken);
  Var gv = fresh_var("G", taken);
  Var jv = fresh_var("J", taken);

  FormulaPtr hb = rename(h.rel.body, h.rel.ctx, concat(xs, {fv}));
  FormulaPtr kb = rename(k.rel.body, k.rel.ctx, concat(xs, {gv}));
  FormulaPtr pk = rename(ic.pairing.body, ic.pairing.ctx, {fv, gv, jv});
  FormulaPtr body = exists(fv, exists(gv, land(hb, land(kb, pk))));
  return Arrow{h.dom, ic.cpair, mk_object(concat(xs, {jv}), body)};
}

std::vector<Obligation> internal_obligations(const InternalCategory& ic) {
  Arrow id_c0 = identity(ic.c0);
  Arrow id_c1 = identity(ic.c1);

  std::vector<Obligation> out;
  auto push = [&out](Obligation ob) {
    ob.provenance = "internal_obligations";
    out.push_back(std::move(ob));
  };

  push(equiv_obligation(compose(ic.id, ic.d0), id_c0));
  push(equiv_obligation(compose(ic.id, ic.d1), id_c0));
  push(equiv_obligation(compose(ic.comp, ic.d0), compose(ic.p0, ic.d0)));
  push(equiv_obligation(compose(ic.comp, ic.d1), compose(ic.p1, ic.d1)));
  push(equiv_obligation(
      compose(pair_into_cpair(ic, compose(ic.d0, ic.id), id_c1), ic.comp), id_c1));
  push(equiv_obligation(
      compose(pair_into_cpair(ic, id_c1, compose(ic.d1, ic.id)), ic.comp), id_c1));

  // Composable triples: a composable pair whose composite feeds a third
  // arrow.  Both routes through comp must agree on the result.
  PullbackResult tri = pullback(compose(ic.comp, ic.d1), ic.d0);
  Arrow lhs = compose(pair_into_cpair(ic, compose(tri.p1, ic.comp), tri.p2), ic.comp);
  Arrow rhs = compose(
      pair_into_cpair(ic, compose(tri.p1, ic.p0),
                      compose(pair_into_cpair(ic, compose(tri.p1, ic.p1), tri.p2), ic.comp)),
      ic.comp);
  push(equiv_obligation(lhs, rhs));
  return out;
}

GlobalElement global_element(const DefinableClass& a, const std::string& site) {
  const Var& xv = a.cls.ctx[0];
  std::set<std::string> taken = names_of(a.cls);
  Var x2 = fresh_var(xv.name, taken);
  FormulaPtr goal =
      exists(xv, land(a.cls.body,
                      forall(x2, implies(substitute(a.cls.body, {{xv, x2}}), eq(x2, xv)))));
  return GlobalElement{a, mk_obligation("unique", {}, std::move(goal), site)};
}

GammaCategory gamma(InternalCategory ic) { return GammaCategory{std::move(ic)}; }

namespace {

// {out | exists e. (A(e) /\ rel(e, out))}: push the named element of `a`
// through an internal arrow's relation.
GlobalElement post_compose(const Arrow& rel, const GlobalElement& a,
                           const std::string& site) {
  std::set<std::string> taken = names_of(a.cls.cls);
  merge_names(taken, names_of(rel.rel));
  Var ev = fresh_var(a.cls.cls.ctx[0].name, taken);
  Var ov = fresh_var(rel.rel.ctx[1].name, taken);
  FormulaPtr body =
      exists(ev, land(rename(a.cls.cls.body, a.cls.cls.ctx, {ev}),
                      rename(rel.rel.body, rel.rel.ctx, {ev, ov})));
  return global_element(mk_class(ov, std::move(body)), site);
}

Obligation membership_typing(const FormulaInContext& cls, const GlobalElement& a,
                             const std::string& site) {
  std::set<std::string> taken = names_of(a.cls.cls);
  merge_names(taken, names_of(cls));
  Var v = fresh_var(a.cls.cls.ctx[0].name, taken);
  FormulaPtr hyp = rename(a.cls.cls.body, a.cls.cls.ctx, {v});
  FormulaPtr goal = rename(cls.body, cls.ctx, {v});
  return mk_obligation("typing", {std::move(hyp)}, std::move(goal), site);
}

}  // namespace

std::vector<Obligation> gamma_object_obligations(const GammaCategory& g,
                                                 const DefinableClass& a) {
  GlobalElement e = global_element(a, "gamma_object");
  return {e.uniqueness, membership_typing(g.ic.c0, e, "gamma_object")};
}

std::vector<Obligation> gamma_arrow_obligations(const GammaCategory& g,
                                                const DefinableClass& a) {
  GlobalElement e = global_element(a, "gamma_arrow");
  return {e.uniqueness, membership_typing(g.ic.c1, e, "gamma_arrow")};
}

GlobalElement gamma_source(const GammaCategory& g, const GlobalElement& f) {
  return post_compose(g.ic.d0, f, "gamma_source");
}

GlobalElement gamma_target(const GammaCategory& g, const GlobalElement& f) {
  return post_compose(g.ic.d1, f, "gamma_target");
}

GlobalElement gamma_identity(const GammaCategory& g, const GlobalElement& x) {
  return post_compose(g.ic.id, x, "gamma_identity");
}

GlobalComposite gamma_compose(const GammaCategory& g, const GlobalElement& a,
                              const GlobalElement& b) {
  const InternalCategory& ic = g.ic;
  std::set<std::string> taken = names_of(a.cls.cls);
  merge_names(taken, names_of(b.cls.cls));
  merge_names(taken, names_of(ic.pairing));
  merge_names(taken, names_of(ic.comp.rel));
  Var fv = fresh_var("F", taken);
  Var gv = fresh_var("F", taken);
  Var jv = fresh_var("J", taken);
  Var ov = fresh_var(ic.comp.rel.ctx[1].name, taken);

  FormulaPtr packed = exists_all(
      {fv, gv}, land(rename(a.cls.cls.body, a.cls.cls.ctx, {fv}),
                     land(rename(b.cls.cls.body, b.cls.cls.ctx, {gv}),
                          rename(ic.pairing.body, ic.pairing.ctx, {fv, gv, jv}))));
  FormulaPtr body =
      exists(jv, land(std::move(packed), rename(ic.comp.rel.body, ic.comp.rel.ctx, {jv, ov})));
  GlobalElement composite = global_element(mk_class(ov, std::move(body)), "gamma_compose");

  GlobalElement ta = gamma_target(g, a);
  GlobalElement sb = gamma_source(g, b);
  std::set<std::string> taken2 = names_of(ta.cls.cls);
  merge_names(taken2, names_of(sb.cls.cls));
  Var mv = fresh_var("x", taken2);
  FormulaPtr match_goal =
      exists(mv, land(rename(ta.cls.cls.body, ta.cls.cls.ctx, {mv}),
                      rename(sb.cls.cls.body, sb.cls.cls.ctx, {mv})));
  Obligation match = mk_obligation("match", {}, std::move(match_goal), "gamma_compose");
  return GlobalComposite{std::move(composite), std::move(match)};
}

Obligation global_equal(const GlobalElement& a, const GlobalElement& b,
                        const std::string& site) {
  std::set<std::string> taken = names_of(a.cls.cls);
  merge_names(taken, names_of(b.cls.cls));
  Var v = fresh_var(a.cls.cls.ctx[0].name, taken);
  FormulaPtr goal = iff(rename(a.cls.cls.body, a.cls.cls.ctx, {v}),
                        rename(b.cls.cls.body, b.cls.cls.ctx, {v}));
  return mk_obligation("global_eq", {}, std::move(goal), site);
}

}  // namespace zfcat
