#include "zfcat/surface.hpp"

#include <sstream>
#include <stdexcept>

namespace zfcat {

namespace sf {

namespace {

TermPtr tnode(Term::Kind k) {
  auto t = std::make_shared<Term>();
  // shared_ptr<const T> conversion happens at return; fill first
  const_cast<Term&>(*t).kind = k;
  return t;
}

SFormulaPtr fnode(SFormula::Kind k) {
  auto f = std::make_shared<SFormula>();
  const_cast<SFormula&>(*f).kind = k;
  return f;
}

}  // namespace

TermPtr tvar(Var v) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->v = std::move(v);
  return t;
}
TermPtr tvar(const std::string& name) { return tvar(Var{name}); }
TermPtr zero() { return tnode(Term::Kind::Zero); }
TermPtr one() { return tnode(Term::Kind::One); }

namespace {
TermPtr tunary(Term::Kind k, TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->t0 = std::move(a);
  return t;
}
TermPtr tbinary(Term::Kind k, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->t0 = std::move(a);
  t->t1 = std::move(b);
  return t;
}
}  // namespace

TermPtr sigma(TermPtr t) { return tunary(Term::Kind::Sigma, std::move(t)); }
TermPtr pair(TermPtr a, TermPtr b) { return tbinary(Term::Kind::Pair, std::move(a), std::move(b)); }
TermPtr sing(TermPtr t) { return tunary(Term::Kind::Sing, std::move(t)); }
TermPtr upair(TermPtr a, TermPtr b) { return tbinary(Term::Kind::Upair, std::move(a), std::move(b)); }
TermPtr un(TermPtr t) { return tunary(Term::Kind::Union, std::move(t)); }

TermPtr cls(Var binder, SFormulaPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Class;
  t->binder = std::move(binder);
  t->body = std::move(body);
  return t;
}

SFormulaPtr top() { return fnode(SFormula::Kind::True); }
SFormulaPtr bot() { return fnode(SFormula::Kind::False); }

namespace {
SFormulaPtr atom2(SFormula::Kind k, TermPtr a, TermPtr b) {
  auto f = std::make_shared<SFormula>();
  f->kind = k;
  f->t0 = std::move(a);
  f->t1 = std::move(b);
  return f;
}
SFormulaPtr conn2(SFormula::Kind k, SFormulaPtr a, SFormulaPtr b) {
  auto f = std::make_shared<SFormula>();
  f->kind = k;
  f->l = std::move(a);
  f->r = std::move(b);
  return f;
}
}  // namespace

SFormulaPtr mem(TermPtr a, TermPtr b) { return atom2(SFormula::Kind::Mem, std::move(a), std::move(b)); }
SFormulaPtr eq(TermPtr a, TermPtr b) { return atom2(SFormula::Kind::Eq, std::move(a), std::move(b)); }
SFormulaPtr sub(TermPtr a, TermPtr b) { return atom2(SFormula::Kind::Sub, std::move(a), std::move(b)); }
SFormulaPtr fun(TermPtr f) { return atom2(SFormula::Kind::Fun, std::move(f), nullptr); }
SFormulaPtr on(TermPtr t) { return atom2(SFormula::Kind::ON, std::move(t), nullptr); }
SFormulaPtr nat(TermPtr t) { return atom2(SFormula::Kind::Nat, std::move(t), nullptr); }
SFormulaPtr indom(TermPtr e, TermPtr f) { return atom2(SFormula::Kind::InDom, std::move(e), std::move(f)); }
SFormulaPtr inran(TermPtr e, TermPtr f) { return atom2(SFormula::Kind::InRan, std::move(e), std::move(f)); }
SFormulaPtr domeq(TermPtr f, TermPtr e) { return atom2(SFormula::Kind::DomEq, std::move(f), std::move(e)); }
SFormulaPtr ransub(TermPtr f, TermPtr e) { return atom2(SFormula::Kind::RanSub, std::move(f), std::move(e)); }

SFormulaPtr lnot(SFormulaPtr f) {
  auto n = std::make_shared<SFormula>();
  n->kind = SFormula::Kind::Not;
  n->l = std::move(f);
  return n;
}
SFormulaPtr land(SFormulaPtr a, SFormulaPtr b) { return conn2(SFormula::Kind::And, std::move(a), std::move(b)); }
SFormulaPtr lor(SFormulaPtr a, SFormulaPtr b) { return conn2(SFormula::Kind::Or, std::move(a), std::move(b)); }
SFormulaPtr implies(SFormulaPtr a, SFormulaPtr b) { return conn2(SFormula::Kind::Implies, std::move(a), std::move(b)); }
SFormulaPtr iff(SFormulaPtr a, SFormulaPtr b) { return conn2(SFormula::Kind::Iff, std::move(a), std::move(b)); }

SFormulaPtr forall(Var v, SFormulaPtr body) {
  auto f = std::make_shared<SFormula>();
  f->kind = SFormula::Kind::Forall;
  f->v = std::move(v);
  f->l = std::move(body);
  return f;
}
SFormulaPtr exists(Var v, SFormulaPtr body) {
  auto f = std::make_shared<SFormula>();
  f->kind = SFormula::Kind::Exists;
  f->v = std::move(v);
  f->l = std::move(body);
  return f;
}

SFormulaPtr from_kernel(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True: return top();
    case Formula::Kind::False: return bot();
    case Formula::Kind::Mem: return mem(tvar(f->a), tvar(f->b));
    case Formula::Kind::Eq: return eq(tvar(f->a), tvar(f->b));
    case Formula::Kind::Not: return lnot(from_kernel(f->lhs));
    case Formula::Kind::And: return land(from_kernel(f->lhs), from_kernel(f->rhs));
    case Formula::Kind::Or: return lor(from_kernel(f->lhs), from_kernel(f->rhs));
    case Formula::Kind::Implies: return implies(from_kernel(f->lhs), from_kernel(f->rhs));
    case Formula::Kind::Iff: return iff(from_kernel(f->lhs), from_kernel(f->rhs));
    case Formula::Kind::Forall: return forall(f->a, from_kernel(f->lhs));
    case Formula::Kind::Exists: return exists(f->a, from_kernel(f->lhs));
  }
  throw std::logic_error("from_kernel: bad kind");
}

}  // namespace sf

namespace {

void term_free_vars(const TermPtr& t, std::set<Var>& bound, std::set<Var>& out);

void sf_free_vars(const SFormulaPtr& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f->kind) {
    case SFormula::Kind::True:
    case SFormula::Kind::False:
      return;
    case SFormula::Kind::Not:
      sf_free_vars(f->l, bound, out);
      return;
    case SFormula::Kind::Forall:
    case SFormula::Kind::Exists: {
      bool fresh = bound.insert(f->v).second;
      sf_free_vars(f->l, bound, out);
      if (fresh) bound.erase(f->v);
      return;
    }
    case SFormula::Kind::And:
    case SFormula::Kind::Or:
    case SFormula::Kind::Implies:
    case SFormula::Kind::Iff:
      sf_free_vars(f->l, bound, out);
      sf_free_vars(f->r, bound, out);
      return;
    default:
      if (f->t0) term_free_vars(f->t0, bound, out);
      if (f->t1) term_free_vars(f->t1, bound, out);
      return;
  }
}

void term_free_vars(const TermPtr& t, std::set<Var>& bound, std::set<Var>& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (!bound.count(t->v)) out.insert(t->v);
      return;
    case Term::Kind::Class: {
      bool fresh = bound.insert(t->binder).second;
      sf_free_vars(t->body, bound, out);
      if (fresh) bound.erase(t->binder);
      return;
    }
    default:
      if (t->t0) term_free_vars(t->t0, bound, out);
      if (t->t1) term_free_vars(t->t1, bound, out);
      return;
  }
}

void term_all_names(const TermPtr& t, std::set<std::string>& out);

void sf_all_names(const SFormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case SFormula::Kind::True:
    case SFormula::Kind::False:
      return;
    case SFormula::Kind::Not:
      sf_all_names(f->l, out);
      return;
    case SFormula::Kind::Forall:
    case SFormula::Kind::Exists:
      out.insert(f->v.name);
      sf_all_names(f->l, out);
      return;
    case SFormula::Kind::And:
    case SFormula::Kind::Or:
    case SFormula::Kind::Implies:
    case SFormula::Kind::Iff:
      sf_all_names(f->l, out);
      sf_all_names(f->r, out);
      return;
    default:
      if (f->t0) term_all_names(f->t0, out);
      if (f->t1) term_all_names(f->t1, out);
      return;
  }
}

void term_all_names(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      out.insert(t->v.name);
      return;
    case Term::Kind::Class:
      out.insert(t->binder.name);
      sf_all_names(t->body, out);
      return;
    default:
      if (t->t0) term_all_names(t->t0, out);
      if (t->t1) term_all_names(t->t1, out);
      return;
  }
}

}  // namespace

std::set<Var> free_vars(const SFormulaPtr& f) {
  std::set<Var> bound, out;
  sf_free_vars(f, bound, out);
  return out;
}

std::set<std::string> all_names(const SFormulaPtr& f) {
  std::set<std::string> out;
  sf_all_names(f, out);
  return out;
}

namespace {

using TermMap = std::map<Var, TermPtr>;

TermPtr subst_term(const TermPtr& t, const TermMap& m, std::set<std::string>& avoid);

SFormulaPtr subst_sf(const SFormulaPtr& f, const TermMap& m, std::set<std::string>& avoid) {
  switch (f->kind) {
    case SFormula::Kind::True:
    case SFormula::Kind::False:
      return f;
    case SFormula::Kind::Not:
      return sf::lnot(subst_sf(f->l, m, avoid));
    case SFormula::Kind::And:
    case SFormula::Kind::Or:
    case SFormula::Kind::Implies:
    case SFormula::Kind::Iff: {
      auto n = std::make_shared<SFormula>();
      n->kind = f->kind;
      n->l = subst_sf(f->l, m, avoid);
      n->r = subst_sf(f->r, m, avoid);
      return n;
    }
    case SFormula::Kind::Forall:
    case SFormula::Kind::Exists: {
      TermMap inner = m;
      inner.erase(f->v);
      bool capture = false;
      std::set<Var> bound, fv;
      sf_free_vars(f->l, bound, fv);
      for (const Var& x : fv) {
        if (x == f->v) continue;
        auto it = inner.find(x);
        if (it == inner.end()) continue;
        std::set<Var> b2, tfv;
        term_free_vars(it->second, b2, tfv);
        if (tfv.count(f->v)) { capture = true; break; }
      }
      Var binder = f->v;
      if (capture) {
        binder = fresh_var(f->v.name, avoid);
        inner[f->v] = sf::tvar(binder);
      }
      SFormulaPtr body = subst_sf(f->l, inner, avoid);
      return f->kind == SFormula::Kind::Forall ? sf::forall(binder, body)
                                               : sf::exists(binder, body);
    }
    default: {
      auto n = std::make_shared<SFormula>();
      n->kind = f->kind;
      if (f->t0) n->t0 = subst_term(f->t0, m, avoid);
      if (f->t1) n->t1 = subst_term(f->t1, m, avoid);
      return n;
    }
  }
}

TermPtr subst_term(const TermPtr& t, const TermMap& m, std::set<std::string>& avoid) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = m.find(t->v);
      return it == m.end() ? t : it->second;
    }
    case Term::Kind::Zero:
    case Term::Kind::One:
      return t;
    case Term::Kind::Class: {
      TermMap inner = m;
      inner.erase(t->binder);
      bool capture = false;
      std::set<Var> bound, fv;
      sf_free_vars(t->body, bound, fv);
      for (const Var& x : fv) {
        if (x == t->binder) continue;
        auto it = inner.find(x);
        if (it == inner.end()) continue;
        std::set<Var> b2, tfv;
        term_free_vars(it->second, b2, tfv);
        if (tfv.count(t->binder)) { capture = true; break; }
      }
      Var binder = t->binder;
      if (capture) {
        binder = fresh_var(t->binder.name, avoid);
        inner[t->binder] = sf::tvar(binder);
      }
      return sf::cls(binder, subst_sf(t->body, inner, avoid));
    }
    default: {
      auto n = std::make_shared<Term>();
      n->kind = t->kind;
      if (t->t0) n->t0 = subst_term(t->t0, m, avoid);
      if (t->t1) n->t1 = subst_term(t->t1, m, avoid);
      return n;
    }
  }
}

}  // namespace

SFormulaPtr substitute(const SFormulaPtr& f, const std::map<Var, TermPtr>& m) {
  if (m.empty()) return f;
  std::set<std::string> avoid = all_names(f);
  for (const auto& [from, to] : m) {
    avoid.insert(from.name);
    std::set<std::string> tn;
    term_all_names(to, tn);
    avoid.insert(tn.begin(), tn.end());
  }
  return subst_sf(f, m, avoid);
}

namespace {

void pretty_term(const TermPtr& t, std::ostringstream& out);
void pretty_sf(const SFormulaPtr& f, int minp, std::ostringstream& out);

void pretty_term(const TermPtr& t, std::ostringstream& out) {
  switch (t->kind) {
    case Term::Kind::Var: out << t->v.name; return;
    case Term::Kind::Zero: out << "0"; return;
    case Term::Kind::One: out << "1"; return;
    case Term::Kind::Sigma:
      out << "sigma(";
      pretty_term(t->t0, out);
      out << ")";
      return;
    case Term::Kind::Pair:
      out << "<";
      pretty_term(t->t0, out);
      out << ",";
      pretty_term(t->t1, out);
      out << ">";
      return;
    case Term::Kind::Sing:
      out << "sing(";
      pretty_term(t->t0, out);
      out << ")";
      return;
    case Term::Kind::Upair:
      out << "upair(";
      pretty_term(t->t0, out);
      out << ",";
      pretty_term(t->t1, out);
      out << ")";
      return;
    case Term::Kind::Union:
      out << "Un(";
      pretty_term(t->t0, out);
      out << ")";
      return;
    case Term::Kind::Class:
      out << "{" << t->binder.name << " | ";
      pretty_sf(t->body, 0, out);
      out << "}";
      return;
  }
}

int sprec(SFormula::Kind k) {
  switch (k) {
    case SFormula::Kind::Forall:
    case SFormula::Kind::Exists: return 0;
    case SFormula::Kind::Iff: return 1;
    case SFormula::Kind::Implies: return 2;
    case SFormula::Kind::Or: return 3;
    case SFormula::Kind::And: return 4;
    case SFormula::Kind::Not: return 5;
    default: return 6;
  }
}

void pretty_sf(const SFormulaPtr& f, int minp, std::ostringstream& out) {
  int p = sprec(f->kind);
  bool paren = p < minp;
  if (paren) out << "(";
  switch (f->kind) {
    case SFormula::Kind::True: out << "true"; break;
    case SFormula::Kind::False: out << "false"; break;
    case SFormula::Kind::Mem:
      pretty_term(f->t0, out);
      out << " in ";
      pretty_term(f->t1, out);
      break;
    case SFormula::Kind::Eq:
      pretty_term(f->t0, out);
      out << " = ";
      pretty_term(f->t1, out);
      break;
    case SFormula::Kind::Sub:
      pretty_term(f->t0, out);
      out << " sub ";
      pretty_term(f->t1, out);
      break;
    case SFormula::Kind::Fun:
      out << "Fun(";
      pretty_term(f->t0, out);
      out << ")";
      break;
    case SFormula::Kind::ON:
      out << "ON(";
      pretty_term(f->t0, out);
      out << ")";
      break;
    case SFormula::Kind::Nat:
      out << "Nat(";
      pretty_term(f->t0, out);
      out << ")";
      break;
    case SFormula::Kind::InDom:
      pretty_term(f->t0, out);
      out << " in dom(";
      pretty_term(f->t1, out);
      out << ")";
      break;
    case SFormula::Kind::InRan:
      pretty_term(f->t0, out);
      out << " in ran(";
      pretty_term(f->t1, out);
      out << ")";
      break;
    case SFormula::Kind::DomEq:
      out << "dom(";
      pretty_term(f->t0, out);
      out << ") = ";
      pretty_term(f->t1, out);
      break;
    case SFormula::Kind::RanSub:
      out << "ran(";
      pretty_term(f->t0, out);
      out << ") sub ";
      pretty_term(f->t1, out);
      break;
    case SFormula::Kind::Not:
      out << "~";
      pretty_sf(f->l, p, out);
      break;
    case SFormula::Kind::Forall:
    case SFormula::Kind::Exists:
      out << (f->kind == SFormula::Kind::Forall ? "forall " : "exists ") << f->v.name << ". ";
      pretty_sf(f->l, 0, out);
      break;
    default: {
      const char* op = f->kind == SFormula::Kind::And       ? " /\\ "
                       : f->kind == SFormula::Kind::Or      ? " \\/ "
                       : f->kind == SFormula::Kind::Implies ? " -> "
                                                            : " <-> ";
      pretty_sf(f->l, p + 1, out);
      out << op;
      pretty_sf(f->r, p, out);
      break;
    }
  }
  if (paren) out << ")";
}

}  // namespace

std::string pretty(const TermPtr& t) {
  std::ostringstream out;
  pretty_term(t, out);
  return out.str();
}

std::string pretty(const SFormulaPtr& f) {
  std::ostringstream out;
  pretty_sf(f, 0, out);
  return out.str();
}

bool struct_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: return a->v == b->v;
    case Term::Kind::Zero:
    case Term::Kind::One: return true;
    case Term::Kind::Class:
      return a->binder == b->binder && struct_eq(a->body, b->body);
    default:
      return struct_eq(a->t0, b->t0) && (a->t1 ? struct_eq(a->t1, b->t1) : !b->t1);
  }
}

bool struct_eq(const SFormulaPtr& a, const SFormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SFormula::Kind::True:
    case SFormula::Kind::False:
      return true;
    case SFormula::Kind::Not:
      return struct_eq(a->l, b->l);
    case SFormula::Kind::Forall:
    case SFormula::Kind::Exists:
      return a->v == b->v && struct_eq(a->l, b->l);
    case SFormula::Kind::And:
    case SFormula::Kind::Or:
    case SFormula::Kind::Implies:
    case SFormula::Kind::Iff:
      return struct_eq(a->l, b->l) && struct_eq(a->r, b->r);
    default:
      return struct_eq(a->t0, b->t0) && (a->t1 ? struct_eq(a->t1, b->t1) : !b->t1);
  }
}

}  // namespace zfcat
