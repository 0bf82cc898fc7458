#include "zfcat/syncat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "zfcat/elaborate.hpp"
#include "zfcat/surface.hpp"

namespace zfcat {
namespace {

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

// Rename the ith context variable to the ith replacement, capture-avoiding.
FormulaPtr rename(const FormulaPtr& body, const std::vector<Var>& from,
                  const std::vector<Var>& to) {
  std::map<Var, Var> m;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i] != to[i]) m[from[i]] = to[i];
  return m.empty() ? body : substitute(body, m);
}

// Componentwise equality of two variable lists; empty lists give top().
FormulaPtr eq_conj(const std::vector<Var>& a, const std::vector<Var>& b) {
  std::vector<FormulaPtr> eqs;
  for (std::size_t i = 0; i < a.size(); ++i) eqs.push_back(eq(a[i], b[i]));
  return land_all(eqs);
}

// Projection onto a contiguous slice of an object's context: the relation
// holds the object's own predicate on a fresh copy of its context and
// equates the slice starting at `offset` with the target's copy.
Arrow coordinate_arrow(const FormulaInContext& obj, const FormulaInContext& target,
                       std::size_t offset) {
  std::set<std::string> taken = names_of(obj);
  merge_names(taken, names_of(target));
  std::vector<Var> up = fresh_copy(obj.ctx, taken);
  std::vector<Var> wp = fresh_copy(target.ctx, taken);
  std::vector<Var> slice(up.begin() + static_cast<std::ptrdiff_t>(offset),
                         up.begin() + static_cast<std::ptrdiff_t>(offset + target.ctx.size()));
  FormulaPtr body = land_all({rename(obj.body, obj.ctx, up), eq_conj(slice, wp)});
  return Arrow{obj, target, FormulaInContext{concat(up, wp), body}};
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Same context length and alpha-equal bodies once the contexts are aligned.
bool object_alpha_eq(const FormulaInContext& a, const FormulaInContext& b) {
  if (a.ctx.size() != b.ctx.size()) return false;
  return alpha_eq(a.body, rename(b.body, b.ctx, a.ctx));
}

}  // namespace

FormulaInContext mk_object(std::vector<Var> ctx, FormulaPtr body) {
  std::set<Var> seen(ctx.begin(), ctx.end());
  require(seen.size() == ctx.size(), "object context repeats a variable");
  for (const Var& v : free_vars(body))
    require(seen.count(v) != 0, "object body mentions a variable outside its context");
  return FormulaInContext{std::move(ctx), std::move(body)};
}

std::vector<Obligation> arrow_obligations(const Arrow& f, const std::string& site) {
  const std::size_t n = f.dom.ctx.size();
  std::vector<Var> xp(f.rel.ctx.begin(), f.rel.ctx.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Var> yp(f.rel.ctx.begin() + static_cast<std::ptrdiff_t>(n), f.rel.ctx.end());
  FormulaPtr p = rename(f.dom.body, f.dom.ctx, xp);
  FormulaPtr q = rename(f.cod.body, f.cod.ctx, yp);

  std::set<std::string> taken = names_of(f.rel);
  std::vector<Var> ypp = fresh_copy(yp, taken);
  FormulaPtr rel2 = rename(f.rel.body, yp, ypp);

  return {
      mk_obligation("typing", {f.rel.body}, land(p, q), site),
      mk_obligation("uniqueness", {f.rel.body, rel2}, eq_conj(yp, ypp), site),
      mk_obligation("totality", {p}, exists_all(yp, f.rel.body), site),
  };
}

ArrowResult mk_arrow(FormulaInContext dom, FormulaInContext cod, FormulaInContext rel) {
  dom = mk_object(dom.ctx, dom.body);
  cod = mk_object(cod.ctx, cod.body);
  rel = mk_object(rel.ctx, rel.body);
  require(rel.ctx.size() == dom.ctx.size() + cod.ctx.size(),
          "relation context length must be |dom| + |cod|");
  Arrow f{std::move(dom), std::move(cod), std::move(rel)};
  std::vector<Obligation> obs = arrow_obligations(f);
  return ArrowResult{std::move(f), std::move(obs)};
}

Arrow identity(const FormulaInContext& a) {
  std::set<std::string> taken = names_of(a);
  std::vector<Var> xp = fresh_copy(a.ctx, taken);
  std::vector<Var> xpp = fresh_copy(a.ctx, taken);
  FormulaPtr body = land_all({eq_conj(xp, xpp), rename(a.body, a.ctx, xp)});
  return Arrow{a, a, FormulaInContext{concat(xp, xpp), body}};
}

Arrow compose(const Arrow& f, const Arrow& g) {
  require(object_alpha_eq(f.cod, g.dom), "compose: codomain does not match domain");

  std::set<std::string> taken = names_of(f);
  merge_names(taken, names_of(g));
  std::vector<Var> xp = fresh_copy(f.dom.ctx, taken);
  std::vector<Var> yp = fresh_copy(f.cod.ctx, taken);
  std::vector<Var> zp = fresh_copy(g.cod.ctx, taken);

  FormulaPtr lhs = rename(f.rel.body, f.rel.ctx, concat(xp, yp));
  FormulaPtr rhs = rename(g.rel.body, g.rel.ctx, concat(yp, zp));
  FormulaPtr body = exists_all(yp, land(lhs, rhs));
  return Arrow{f.dom, g.cod, FormulaInContext{concat(xp, zp), body}};
}

Obligation equiv_obligation(const Arrow& f, const Arrow& g) {
  require(object_alpha_eq(f.dom, g.dom), "equiv_obligation: domain mismatch");
  require(object_alpha_eq(f.cod, g.cod), "equiv_obligation: codomain mismatch");
  FormulaPtr other = rename(g.rel.body, g.rel.ctx, f.rel.ctx);
  return mk_obligation("arrow_equiv", {}, iff(f.rel.body, other), "equiv_obligation");
}

ProductResult product(const FormulaInContext& a, const FormulaInContext& b) {
  // Freshen b's context only where it collides with names on the a side,
  // so disjoint inputs come through verbatim.
  std::set<std::string> a_side = names_of(a);
  std::set<std::string> taken = a_side;
  merge_names(taken, names_of(b));

  std::vector<Var> b2;
  std::map<Var, Var> ren;
  for (const Var& v : b.ctx) {
    if (a_side.count(v.name)) {
      Var nv = fresh_var(v.name, taken);
      ren[v] = nv;
      b2.push_back(nv);
    } else {
      b2.push_back(v);
    }
  }
  FormulaPtr qbody = ren.empty() ? b.body : substitute(b.body, ren);

  FormulaInContext obj{concat(a.ctx, b2), land(a.body, qbody)};
  Arrow p1 = coordinate_arrow(obj, a, 0);
  Arrow p2 = coordinate_arrow(obj, b, a.ctx.size());
  return ProductResult{std::move(obj), std::move(p1), std::move(p2)};
}

FormulaInContext distinguished(Distinguished kind) {
  Var x{"x"};
  if (kind == Distinguished::Terminal) {
    Var t{"t"};
    return FormulaInContext{{x}, forall(t, lnot(mem(t, x)))};
  }
  return FormulaInContext{{x}, lnot(eq(x, x))};
}

PullbackResult pullback(const Arrow& f, const Arrow& g) {
  require(object_alpha_eq(f.cod, g.cod), "pullback: arrows need a common codomain");

  std::set<std::string> taken = names_of(f);
  merge_names(taken, names_of(g));
  std::vector<Var> xp = fresh_copy(f.dom.ctx, taken);
  std::vector<Var> yp = fresh_copy(g.dom.ctx, taken);
  std::vector<Var> zp = fresh_copy(f.cod.ctx, taken);

  FormulaPtr lhs = rename(f.rel.body, f.rel.ctx, concat(xp, zp));
  FormulaPtr rhs = rename(g.rel.body, g.rel.ctx, concat(yp, zp));
  FormulaInContext obj{concat(xp, yp), exists_all(zp, land(lhs, rhs))};

  Arrow p1 = coordinate_arrow(obj, f.dom, 0);
  Arrow p2 = coordinate_arrow(obj, g.dom, xp.size());
  return PullbackResult{std::move(obj), std::move(p1), std::move(p2)};
}

Arrow subobject_classifier() {
  Var x{"x"}, x1{"x1"}, x2{"x2"};
  FormulaInContext dom{{x}, elaborate(sf::eq(sf::tvar(x), sf::zero()))};
  FormulaInContext cod{{x}, elaborate(sf::lor(sf::eq(sf::tvar(x), sf::zero()),
                                              sf::eq(sf::tvar(x), sf::one())))};
  FormulaPtr rel = elaborate(sf::land(sf::eq(sf::tvar(x1), sf::zero()),
                                      sf::eq(sf::tvar(x2), sf::one())));
  return Arrow{std::move(dom), std::move(cod), FormulaInContext{{x1, x2}, rel}};
}

namespace {

// <<..<x1,x2>,..>,xn> as a surface term.
TermPtr pair_chain(const std::vector<Var>& vs) {
  TermPtr t = sf::tvar(vs[0]);
  for (std::size_t i = 1; i < vs.size(); ++i) t = sf::pair(t, sf::tvar(vs[i]));
  return t;
}

}  // namespace

CollapseResult collapse_context(const FormulaInContext& a) {
  const std::size_t n = a.ctx.size();
  if (n == 1) return CollapseResult{a, identity(a), identity(a)};

  std::set<std::string> taken = names_of(a);

  if (n == 0) {
    // A closed formula collapses onto the terminal: the one point carries
    // the truth of the body.
    Var z = fresh_var("x", taken);
    Var t = fresh_var("t", taken);
    auto empty_at = [&taken](const Var& v) {
      Var s = fresh_var("t", taken);
      return forall(s, lnot(mem(s, v)));
    };
    FormulaInContext obj{{z}, land(forall(t, lnot(mem(t, z))), a.body)};

    Var zp = fresh_var("x", taken);
    Arrow iso{a, obj, FormulaInContext{{zp}, land(empty_at(zp), a.body)}};
    Var zq = fresh_var("x", taken);
    Arrow inv{obj, a, FormulaInContext{{zq}, land(empty_at(zq), a.body)}};
    return CollapseResult{std::move(obj), std::move(iso), std::move(inv)};
  }

  Var z = fresh_var("x", taken);
  SFormulaPtr packed = sf::land(sf::eq(sf::tvar(z), pair_chain(a.ctx)),
                                sf::from_kernel(a.body));
  for (std::size_t i = n; i-- > 0;) packed = sf::exists(a.ctx[i], packed);
  FormulaInContext obj{{z}, elaborate(packed)};

  std::vector<Var> xp = fresh_copy(a.ctx, taken);
  Var zp = fresh_var("x", taken);
  FormulaPtr iso_body = elaborate(
      sf::land(sf::from_kernel(rename(a.body, a.ctx, xp)),
               sf::eq(sf::tvar(zp), pair_chain(xp))));
  Arrow iso{a, obj, FormulaInContext{concat(xp, {zp}), iso_body}};

  Var zq = fresh_var("x", taken);
  std::vector<Var> xq = fresh_copy(a.ctx, taken);
  FormulaPtr inv_body = elaborate(
      sf::land(sf::eq(sf::tvar(zq), pair_chain(xq)),
               sf::from_kernel(rename(a.body, a.ctx, xq))));
  Arrow inv{obj, a, FormulaInContext{concat({zq}, xq), inv_body}};

  return CollapseResult{std::move(obj), std::move(iso), std::move(inv)};
}

IntersectionResult intersect_classes(const FormulaInContext& a,
                                     const FormulaInContext& b) {
  require(a.ctx.size() == 1 && b.ctx.size() == 1,
          "intersect_classes expects single-variable classes");

  ProductResult pr = product(a, b);
  const FormulaInContext& d = pr.obj;  // {x,y | P /\ Q}

  std::set<std::string> taken = names_of(d);
  merge_names(taken, names_of(a));
  merge_names(taken, names_of(b));

  // Codomain square {x,y | x=x /\ y=y} and the diagonal into it.
  std::vector<Var> ec = fresh_copy(d.ctx, taken);
  FormulaInContext square{ec, land(eq(ec[0], ec[0]), eq(ec[1], ec[1]))};
  Arrow incl = coordinate_arrow(d, square, 0);

  Var w = fresh_var("x", taken);
  FormulaInContext whole{{w}, eq(w, w)};
  Var w1 = fresh_var(w.name, taken);
  std::vector<Var> wc = fresh_copy(ec, taken);
  FormulaPtr diag_body = land(eq(w1, wc[0]), eq(w1, wc[1]));
  Arrow diag{whole, square, FormulaInContext{concat({w1}, wc), diag_body}};

  PullbackResult pb = pullback(incl, diag);

  // The pullback object lives in a three-variable context (d1, d2, c); it
  // should be exactly the diagonal copy of {x | P /\ Q[x/y]}.
  const std::vector<Var>& oc = pb.obj.ctx;
  FormulaPtr p_at = rename(a.body, a.ctx, {oc[0]});
  FormulaPtr q_at = rename(b.body, b.ctx, {oc[0]});
  FormulaPtr flat = land_all({p_at, q_at, eq(oc[1], oc[0]), eq(oc[2], oc[0])});
  Obligation witness = mk_obligation("intersection_iso", {},
                                       iff(pb.obj.body, flat), "intersect_classes");
  return IntersectionResult{pb.obj, std::move(witness)};
}

}  // namespace zfcat
