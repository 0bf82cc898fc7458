#include "zfcat/smallmaps.hpp"

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

FormulaPtr rename(const FormulaPtr& body, const std::vector<Var>& from,
                  const std::vector<Var>& to) {
  std::map<Var, Var> m;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i] != to[i]) m[from[i]] = to[i];
  return m.empty() ? body : substitute(body, m);
}

FormulaPtr eq_conj(const std::vector<Var>& a, const std::vector<Var>& b) {
  std::vector<FormulaPtr> eqs;
  for (std::size_t i = 0; i < a.size(); ++i) eqs.push_back(eq(a[i], b[i]));
  return land_all(eqs);
}

bool object_alpha_eq(const FormulaInContext& a, const FormulaInContext& b) {
  if (a.ctx.size() != b.ctx.size()) return false;
  return alpha_eq(a.body, rename(b.body, b.ctx, a.ctx));
}

// {y | forall x. (x in y -> P)} with y fresh against `taken`.
DefinableClass ps_class(const DefinableClass& x, std::set<std::string>& taken) {
  const Var& xv = x.cls.ctx[0];
  Var y = fresh_var("y", taken);
  return mk_class(y, forall(xv, implies(mem(xv, y), x.cls.body)));
}

// The inclusion {z | D} -> cod given by D(z1) /\ z1 = z2.
Arrow inclusion(const DefinableClass& dom, const FormulaInContext& cod,
                std::set<std::string>& taken) {
  Var z1 = fresh_var(dom.cls.ctx[0].name, taken);
  Var z2 = fresh_var(dom.cls.ctx[0].name, taken);
  FormulaPtr body = land(rename(dom.cls.body, dom.cls.ctx, {z1}), eq(z1, z2));
  return Arrow{dom.cls, cod, mk_object({z1, z2}, body)};
}

}  // namespace

Obligation smallness_obligation(const Arrow& f, const std::string& site) {
  require(f.dom.ctx.size() == 1 && f.cod.ctx.size() == 1,
          "smallness_obligation expects single-variable contexts; collapse first");
  const Var& xv = f.rel.ctx[0];
  const Var& yv = f.rel.ctx[1];
  std::set<std::string> taken = names_of(f.rel);
  Var z = fresh_var("z", taken);
  FormulaPtr goal = forall(yv, exists(z, forall(xv, iff(mem(xv, z), f.rel.body))));
  return mk_obligation("smallness", {}, std::move(goal), site);
}

SmallnessWitness small_arrow(const Arrow& f, const std::string& site) {
  return SmallnessWitness{f, smallness_obligation(f, site)};
}

Obligation mono_obligation(const Arrow& f, const std::string& site) {
  const std::size_t n = f.dom.ctx.size();
  std::vector<Var> xp(f.rel.ctx.begin(),
                      f.rel.ctx.begin() + static_cast<std::ptrdiff_t>(n));
  std::set<std::string> taken = names_of(f.rel);
  std::vector<Var> xpp = fresh_copy(xp, taken);
  FormulaPtr rel2 = rename(f.rel.body, xp, xpp);
  return mk_obligation("mono", {f.rel.body, rel2}, eq_conj(xp, xpp), site);
}

PowerData power_data(const DefinableClass& x) {
  const Var& xv = x.cls.ctx[0];
  const FormulaPtr& p = x.cls.body;
  std::set<std::string> taken = names_of(x.cls);

  PowerData out;
  out.ps = ps_class(x, taken);
  const Var& yv = out.ps.cls.ctx[0];

  Var t = fresh_var("t", taken);
  Var z = fresh_var("z", taken);

  // forall t in y. P(t): y's members all satisfy P.
  SFormulaPtr gate =
      sf::forall(t, sf::implies(sf::mem(sf::tvar(t), sf::tvar(yv)),
                                sf::from_kernel(substitute(p, {{xv, t}}))));
  SFormulaPtr member =
      sf::land(sf::eq(sf::tvar(z), sf::pair(sf::tvar(xv), sf::tvar(yv))),
               sf::land(gate, sf::mem(sf::tvar(xv), sf::tvar(yv))));
  out.mem = mk_class(z, elaborate(sf::exists(xv, sf::exists(yv, member))));

  Var pv = fresh_var("p", taken);
  SFormulaPtr prod_body = sf::exists(
      xv,
      sf::exists(yv, sf::land(sf::eq(sf::tvar(pv), sf::pair(sf::tvar(xv), sf::tvar(yv))),
                              sf::land(sf::from_kernel(p),
                                       sf::from_kernel(out.ps.cls.body)))));
  out.prod = mk_class(pv, elaborate(prod_body));

  out.e = inclusion(out.mem, out.prod.cls, taken);
  out.obligations = arrow_obligations(out.e, "power_data");

  Var z2 = fresh_var("z", taken);
  Var w = fresh_var(yv.name, taken);
  SFormulaPtr leg_body = sf::exists(
      xv, sf::land(sf::eq(sf::tvar(z2), sf::pair(sf::tvar(xv), sf::tvar(w))),
                   sf::land(substitute(gate, {{yv, sf::tvar(w)}}),
                            sf::mem(sf::tvar(xv), sf::tvar(w)))));
  Arrow leg{out.mem.cls, out.ps.cls, mk_object({z2, w}, elaborate(leg_body))};
  out.second_leg = small_arrow(leg, "power_data");
  out.obligations.push_back(out.second_leg.obligation);
  return out;
}

Obligation representation_square(const DefinableClass& z, const FormulaInContext& r,
                                 const Arrow& g, const std::string& site) {
  require(r.ctx.size() == 2, "representation_square expects a two-variable relation");
  require(g.rel.ctx.size() == 2,
          "representation_square expects single-variable candidate contexts");
  const Var& rx = r.ctx[0];
  const Var& ry = r.ctx[1];
  std::set<std::string> taken = names_of(r);
  merge_names(taken, names_of(g.rel));
  merge_names(taken, names_of(z.cls));
  Var w = fresh_var(g.rel.ctx[1].name, taken);
  FormulaPtr grel = rename(g.rel.body, g.rel.ctx, {ry, w});
  FormulaPtr hyp = rename(z.cls.body, z.cls.ctx, {ry});
  FormulaPtr goal = iff(r.body, exists(w, land(grel, mem(rx, w))));
  return mk_obligation("rep_square", {hyp}, std::move(goal), site);
}

RepresentedRelation representing_arrow(const DefinableClass& x, const DefinableClass& z,
                                       const FormulaInContext& r) {
  require(r.ctx.size() == 2, "representing_arrow expects a two-variable relation");
  const Var& rx = r.ctx[0];
  const Var& ry = r.ctx[1];

  std::set<std::string> taken = names_of(r);
  merge_names(taken, names_of(x.cls));
  merge_names(taken, names_of(z.cls));
  DefinableClass ps = ps_class(x, taken);

  RepresentedRelation out;
  Var y1 = fresh_var(ry.name, taken);
  Var y2 = fresh_var(ry.name, taken);
  FormulaPtr graph = land(rename(z.cls.body, z.cls.ctx, {y1}),
                          forall(rx, iff(mem(rx, y2), rename(r.body, {ry}, {y1}))));
  out.rho = Arrow{z.cls, ps.cls, mk_object({y1, y2}, graph)};
  out.obligations = arrow_obligations(out.rho, "representing_arrow");

  Var v = fresh_var("z", taken);
  FormulaPtr fiber = forall(ry, exists(v, forall(rx, iff(mem(rx, v), r.body))));
  out.smallness = mk_obligation("smallness", {}, std::move(fiber), "representing_arrow");
  out.square = representation_square(z, r, out.rho, "representing_arrow");
  return out;
}

SubsetData subset_arrow(const DefinableClass& x) {
  const Var& xv = x.cls.ctx[0];
  const FormulaPtr& p = x.cls.body;
  std::set<std::string> taken = names_of(x.cls);

  SubsetData out;
  DefinableClass ps = ps_class(x, taken);

  Var y1 = fresh_var("y", taken);
  Var y2 = fresh_var("y", taken);
  Var z = fresh_var("z", taken);

  SFormulaPtr heart =
      sf::land(sf::eq(sf::tvar(z), sf::pair(sf::tvar(y1), sf::tvar(y2))),
               sf::land(sf::sub(sf::tvar(y1), sf::tvar(y2)),
                        sf::from_kernel(forall(xv, implies(mem(xv, y2), p)))));
  out.dom = mk_class(z, elaborate(sf::exists(y1, sf::exists(y2, heart))));

  Var pv = fresh_var("p", taken);
  SFormulaPtr prod_body = sf::exists(
      y1,
      sf::exists(y2, sf::land(sf::eq(sf::tvar(pv), sf::pair(sf::tvar(y1), sf::tvar(y2))),
                              sf::land(sf::from_kernel(rename(ps.cls.body, ps.cls.ctx, {y1})),
                                       sf::from_kernel(rename(ps.cls.body, ps.cls.ctx, {y2}))))));
  out.prod = mk_class(pv, elaborate(prod_body));

  out.arrow = inclusion(out.dom, out.prod.cls, taken);
  out.obligations = arrow_obligations(out.arrow, "subset_arrow");

  Var z2 = fresh_var("z", taken);
  Var w = fresh_var("y", taken);
  SFormulaPtr leg_body = sf::exists(
      y1, sf::land(sf::eq(sf::tvar(z2), sf::pair(sf::tvar(y1), sf::tvar(w))),
                   sf::land(sf::sub(sf::tvar(y1), sf::tvar(w)),
                            sf::from_kernel(forall(xv, implies(mem(xv, w), p))))));
  Arrow leg{out.dom.cls, ps.cls, mk_object({z2, w}, elaborate(leg_body))};
  out.second_leg = small_arrow(leg, "subset_arrow");
  out.obligations.push_back(out.second_leg.obligation);
  return out;
}

MonoResult universal_mono(const DefinableClass& a) {
  const Var& xv = a.cls.ctx[0];
  std::set<std::string> taken = names_of(a.cls);
  Var u = fresh_var(xv.name, taken);
  FormulaInContext whole{{u}, eq(u, u)};
  Var x1 = fresh_var(xv.name, taken);
  Var x2 = fresh_var(xv.name, taken);
  FormulaPtr body = land(rename(a.cls.body, a.cls.ctx, {x1}), eq(x1, x2));
  Arrow m{a.cls, whole, mk_object({x1, x2}, body)};
  MonoResult out{m, arrow_obligations(m, "universal_mono")};
  out.obligations.push_back(mono_obligation(m, "universal_mono"));
  return out;
}

ZFAlgebra initial_zf_algebra() {
  Var x{"x"};
  DefinableClass universe = mk_class(x, eq(x, x));
  SubsetData order = subset_arrow(universe);

  std::set<std::string> taken = names_of(order.arrow);
  Var x1 = fresh_var("x", taken);
  Var z1 = fresh_var("z", taken);
  FormulaPtr sing = elaborate(sf::eq(sf::tvar(z1), sf::sing(sf::tvar(x1))));
  Arrow succ{universe.cls, universe.cls, mk_object({x1, z1}, sing)};

  ZFAlgebra out;
  out.carrier = universe.cls;
  out.order = order.arrow;
  out.succ = succ;
  out.obligations = arrow_obligations(succ, "initial_zf_algebra");

  // Reflexivity of the order, phrased on its own class: the diagonal pair
  // <y,y> satisfies the class the inclusion arrow starts from.
  Var yr = fresh_var("y", taken);
  SFormulaPtr diag =
      substitute(sf::from_kernel(order.dom.cls.body),
                 {{order.dom.cls.ctx[0], sf::pair(sf::tvar(yr), sf::tvar(yr))}});
  out.reflexivity = mk_obligation("order_refl", {}, elaborate(diag), "initial_zf_algebra");
  out.obligations.push_back(out.reflexivity);
  return out;
}

SupResult sup_along(const SmallnessWitness& j, const Arrow& lam) {
  const Arrow& f = j.arrow;
  require(object_alpha_eq(f.dom, lam.dom),
          "sup_along: family must share the small arrow's domain");
  require(f.cod.ctx.size() == 1 && lam.cod.ctx.size() == 1,
          "sup_along expects single-variable contexts");

  std::set<std::string> taken = names_of(f);
  merge_names(taken, names_of(lam));
  Var a = fresh_var(f.cod.ctx[0].name, taken);
  Var u = fresh_var(lam.cod.ctx[0].name, taken);
  Var b = fresh_var(f.dom.ctx[0].name, taken);
  Var t = fresh_var("t", taken);
  Var v = fresh_var(lam.cod.ctx[0].name, taken);

  FormulaPtr fj = rename(f.rel.body, f.rel.ctx, {b, a});
  FormulaPtr fl = rename(lam.rel.body, lam.rel.ctx, {b, v});
  FormulaPtr q = rename(f.cod.body, f.cod.ctx, {a});
  FormulaPtr body = land(
      q, forall(t, iff(mem(t, u),
                       exists(b, land(fj, exists(v, land(fl, mem(t, v))))))));
  Arrow s{f.cod, lam.cod, mk_object({a, u}, body)};
  return SupResult{s, f, lam, arrow_obligations(s, "sup_along")};
}

std::vector<Obligation> sup_square_obligations(const SupResult& s, const Arrow& jp,
                                               const Arrow& lamp) {
  require(object_alpha_eq(jp.cod, s.along.cod),
          "sup square: jp must land in the sup's domain");
  require(object_alpha_eq(lamp.cod, s.lam.cod),
          "sup square: lamp must land in the family's codomain");
  require(object_alpha_eq(jp.dom, lamp.dom),
          "sup square: test arrows need a common domain");
  require(jp.dom.ctx.size() == 1, "sup square expects single-variable contexts");

  std::set<std::string> taken = names_of(s.sup);
  merge_names(taken, names_of(s.along));
  merge_names(taken, names_of(s.lam));
  merge_names(taken, names_of(jp));
  merge_names(taken, names_of(lamp));

  Var w = fresh_var(jp.dom.ctx[0].name, taken);
  Var bb = fresh_var(s.along.dom.ctx[0].name, taken);
  Var aa = fresh_var(s.along.cod.ctx[0].name, taken);
  Var u1 = fresh_var("u", taken);
  Var u2 = fresh_var("u", taken);
  Var t = fresh_var("t", taken);

  FormulaPtr seq = forall(t, implies(mem(t, u1), mem(t, u2)));

  FormulaPtr jp_w = rename(jp.rel.body, jp.rel.ctx, {w, aa});
  FormulaPtr sup_a = rename(s.sup.rel.body, s.sup.rel.ctx, {aa, u1});
  FormulaPtr lamp_w = rename(lamp.rel.body, lamp.rel.ctx, {w, u2});
  FormulaPtr lhs = forall_all(
      {w, u1, u2}, implies(land(exists(aa, land(jp_w, sup_a)), lamp_w), seq));

  FormulaPtr fj_b = rename(s.along.rel.body, s.along.rel.ctx, {bb, aa});
  FormulaPtr lam_b = rename(s.lam.rel.body, s.lam.rel.ctx, {bb, u1});
  FormulaPtr rhs = forall_all(
      {w, bb}, implies(exists(aa, land(jp_w, fj_b)),
                       forall_all({u1, u2}, implies(land(lam_b, lamp_w), seq))));

  return {
      mk_obligation("sup_upper", {}, implies(lhs, rhs), "sup_square"),
      mk_obligation("sup_least", {}, implies(rhs, lhs), "sup_square"),
  };
}

SetVsSmall small_iff_set(const DefinableClass& a, bool needs_infinity) {
  DefinableClass one = dst_terminal();
  std::set<std::string> taken = names_of(a.cls);
  merge_names(taken, names_of(one.cls));
  Var x1 = fresh_var(a.cls.ctx[0].name, taken);
  Var y1 = fresh_var("y", taken);
  FormulaPtr body = land(rename(a.cls.body, a.cls.ctx, {x1}),
                         rename(one.cls.body, one.cls.ctx, {y1}));
  Arrow bang{a.cls, one.cls, mk_object({x1, y1}, body)};

  SetVsSmall out{smallness_obligation(bang, "small_iff_set"), set_obligation(a)};
  out.smallness.needs_infinity = needs_infinity;
  out.set.needs_infinity = needs_infinity;
  return out;
}

}  // namespace zfcat
