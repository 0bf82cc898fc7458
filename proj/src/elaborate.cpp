#include "zfcat/elaborate.hpp"

#include <functional>

namespace zfcat {

namespace {

struct Elab {
  std::set<std::string> avoid;  // every name seen or generated so far

  Var fresh(const std::string& base) { return fresh_var(base, avoid); }

  // Defining formula for `w = <term>` where all immediate arguments are
  // already variables.
  FormulaPtr def_zero(const Var& w) {
    Var u = fresh("u");
    return forall(u, lnot(mem(u, w)));
  }
  FormulaPtr def_sigma(const Var& w, const Var& t) {
    Var u = fresh("u");
    return forall(u, iff(mem(u, w), lor(mem(u, t), eq(u, t))));
  }
  FormulaPtr def_sing(const Var& w, const Var& t) {
    Var u = fresh("u");
    return forall(u, iff(mem(u, w), eq(u, t)));
  }
  FormulaPtr def_upair(const Var& w, const Var& a, const Var& b) {
    Var u = fresh("u");
    return forall(u, iff(mem(u, w), lor(eq(u, a), eq(u, b))));
  }
  FormulaPtr def_union(const Var& w, const Var& t) {
    Var u = fresh("u");
    Var y = fresh("y");
    return forall(u, iff(mem(u, w), exists(y, land(mem(u, y), mem(y, t)))));
  }

  using Cont = std::function<FormulaPtr(const Var&)>;

  // Bind a witness for `t` and continue.  Variables pass straight through.
  FormulaPtr with_term(const TermPtr& t, const Cont& k) {
    switch (t->kind) {
      case Term::Kind::Var:
        return k(t->v);
      case Term::Kind::Zero: {
        Var w = fresh("w");
        return exists(w, land(def_zero(w), k(w)));
      }
      case Term::Kind::One:
        return with_term(sf::sigma(sf::zero()), k);
      case Term::Kind::Sigma:
        return with_term(t->t0, [&](const Var& v) {
          Var w = fresh("w");
          return exists(w, land(def_sigma(w, v), k(w)));
        });
      case Term::Kind::Sing:
        return with_term(t->t0, [&](const Var& v) {
          Var w = fresh("w");
          return exists(w, land(def_sing(w, v), k(w)));
        });
      case Term::Kind::Upair:
        return with_term(t->t0, [&](const Var& v1) {
          return with_term(t->t1, [&](const Var& v2) {
            Var w = fresh("w");
            return exists(w, land(def_upair(w, v1, v2), k(w)));
          });
        });
      case Term::Kind::Union:
        return with_term(t->t0, [&](const Var& v) {
          Var w = fresh("w");
          return exists(w, land(def_union(w, v), k(w)));
        });
      case Term::Kind::Pair:
        // Kuratowski: <a,b> = upair(sing(a), upair(a,b)).
        return with_term(t->t0, [&](const Var& va) {
          return with_term(t->t1, [&](const Var& vb) {
            Var s = fresh("w");
            Var d = fresh("w");
            Var w = fresh("w");
            return exists(s, land(def_sing(s, va),
                   exists(d, land(def_upair(d, va, vb),
                   exists(w, land(def_upair(w, s, d), k(w)))))));
          });
        });
      case Term::Kind::Class:
        throw ElabError("class expression used as a set term: " + pretty(t));
    }
    throw std::logic_error("with_term: bad kind");
  }

  // -- derived predicate expansions (argument already a variable) --------

  FormulaPtr expand_fun(const Var& f) {
    Var t = fresh("t");
    Var s = fresh("s");
    Var s1 = fresh("s");
    Var s2 = fresh("s");
    SFormulaPtr pairs_only = sf::forall(
        t, sf::implies(sf::mem(sf::tvar(t), sf::tvar(f)),
                       sf::exists(s, sf::exists(s1, sf::eq(sf::tvar(t),
                                                           sf::pair(sf::tvar(s), sf::tvar(s1)))))));
    SFormulaPtr single_valued = sf::forall(
        s, sf::forall(s1, sf::forall(s2,
            sf::implies(sf::land(sf::mem(sf::pair(sf::tvar(s), sf::tvar(s1)), sf::tvar(f)),
                                 sf::mem(sf::pair(sf::tvar(s), sf::tvar(s2)), sf::tvar(f))),
                        sf::eq(sf::tvar(s1), sf::tvar(s2))))));
    return land(go(pairs_only), go(single_valued));
  }

  FormulaPtr expand_on(const Var& x) {
    Var s = fresh("s");
    Var s1 = fresh("s");
    Var s2 = fresh("s");
    FormulaPtr trans_mem = forall(s, forall(s1, forall(s2,
        implies(land(mem(s, x), land(mem(s1, x), land(mem(s2, x),
                     land(mem(s, s1), mem(s1, s2))))),
                mem(s, s2)))));
    FormulaPtr trichotomy = forall(s, forall(s1,
        implies(land(mem(s, x), land(mem(s1, x), lnot(eq(s, s1)))),
                lor(mem(s, s1), mem(s1, s)))));
    Var t = fresh("t");
    FormulaPtr transitive_set = forall(s,
        implies(mem(s, x), forall(t, implies(mem(t, s), mem(t, x)))));
    return land(trans_mem, land(trichotomy, transitive_set));
  }

  FormulaPtr expand_nat(const Var& x) {
    // ON(x) and every member of sigma(x) is zero or a successor in sigma(x).
    Var s = fresh("s");
    Var s1 = fresh("s");
    SFormulaPtr succ_closed = sf::forall(
        s, sf::implies(sf::mem(sf::tvar(s), sf::sigma(sf::tvar(x))),
                       sf::lor(sf::eq(sf::tvar(s), sf::zero()),
                               sf::exists(s1, sf::land(sf::mem(sf::tvar(s1), sf::sigma(sf::tvar(x))),
                                                       sf::eq(sf::tvar(s), sf::sigma(sf::tvar(s1))))))));
    return land(expand_on(x), go(succ_closed));
  }

  // Hoist a non-variable argument through `w = e`, then expand.
  FormulaPtr with_hoisted(const TermPtr& e, const Cont& k) {
    if (e->kind == Term::Kind::Var) return k(e->v);
    if (e->kind == Term::Kind::Class)
      throw ElabError("class expression used as a set term: " + pretty(e));
    return with_term(e, k);
  }

  FormulaPtr go(const SFormulaPtr& f) {
    switch (f->kind) {
      case SFormula::Kind::True: return top();
      case SFormula::Kind::False: return bot();
      case SFormula::Kind::Not: return lnot(go(f->l));
      case SFormula::Kind::And: return land(go(f->l), go(f->r));
      case SFormula::Kind::Or: return lor(go(f->l), go(f->r));
      case SFormula::Kind::Implies: return implies(go(f->l), go(f->r));
      case SFormula::Kind::Iff: return iff(go(f->l), go(f->r));
      case SFormula::Kind::Forall: return forall(f->v, go(f->l));
      case SFormula::Kind::Exists: return exists(f->v, go(f->l));

      case SFormula::Kind::Mem: {
        if (f->t1->kind == Term::Kind::Class) {
          const TermPtr& c = f->t1;
          std::set<Var> fv = free_vars(c->body);
          fv.erase(c->binder);
          if (!fv.empty())
            throw ElabError("free variable '" + fv.begin()->name +
                            "' escapes the class binder in " + pretty(c));
          return go(substitute(c->body, {{c->binder, f->t0}}));
        }
        if (f->t0->kind == Term::Kind::Class)
          throw ElabError("class expression used as a set term: " + pretty(f->t0));
        return with_hoisted(f->t0, [&](const Var& a) {
          return with_hoisted(f->t1, [&](const Var& b) { return mem(a, b); });
        });
      }
      case SFormula::Kind::Eq: {
        if (f->t0->kind == Term::Kind::Class || f->t1->kind == Term::Kind::Class)
          throw ElabError("class expression in an equality: " + pretty(f));
        return with_hoisted(f->t0, [&](const Var& a) {
          return with_hoisted(f->t1, [&](const Var& b) { return eq(a, b); });
        });
      }
      case SFormula::Kind::Sub: {
        // t0 sub t1 := forall t. t in t0 -> t in t1; class braces on either
        // side unfold through the membership case.
        Var t = fresh("t");
        return go(sf::forall(t, sf::implies(sf::mem(sf::tvar(t), f->t0),
                                            sf::mem(sf::tvar(t), f->t1))));
      }
      case SFormula::Kind::Fun:
        return with_hoisted(f->t0, [&](const Var& v) { return expand_fun(v); });
      case SFormula::Kind::ON:
        return with_hoisted(f->t0, [&](const Var& v) { return expand_on(v); });
      case SFormula::Kind::Nat:
        return with_hoisted(f->t0, [&](const Var& v) { return expand_nat(v); });
      case SFormula::Kind::InDom: {
        // e in dom(f) := exists s. <e,s> in f
        Var s = fresh("s");
        return go(sf::exists(s, sf::mem(sf::pair(f->t0, sf::tvar(s)), f->t1)));
      }
      case SFormula::Kind::InRan: {
        Var s = fresh("s");
        return go(sf::exists(s, sf::mem(sf::pair(sf::tvar(s), f->t0), f->t1)));
      }
      case SFormula::Kind::DomEq: {
        // dom(f) = e := forall s. s in e <-> exists s1. <s,s1> in f
        Var s = fresh("s");
        Var s1 = fresh("s");
        return go(sf::forall(
            s, sf::iff(sf::mem(sf::tvar(s), f->t1),
                       sf::exists(s1, sf::mem(sf::pair(sf::tvar(s), sf::tvar(s1)), f->t0)))));
      }
      case SFormula::Kind::RanSub: {
        // ran(f) sub e := forall s. (exists s1. <s1,s> in f) -> s in e
        Var s = fresh("s");
        Var s1 = fresh("s");
        return go(sf::forall(
            s, sf::implies(sf::exists(s1, sf::mem(sf::pair(sf::tvar(s1), sf::tvar(s)), f->t0)),
                           sf::mem(sf::tvar(s), f->t1))));
      }
    }
    throw std::logic_error("elaborate: bad kind");
  }
};

}  // namespace

FormulaPtr elaborate(const SFormulaPtr& f) {
  Elab e;
  e.avoid = all_names(f);
  return e.go(f);
}

}  // namespace zfcat
