#include "zfcat/formula.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace zfcat {

namespace {

FormulaPtr node(Formula::Kind k, Var a = Var{}, Var b = Var{}, FormulaPtr l = nullptr,
                FormulaPtr r = nullptr) {
  return std::make_shared<Formula>(k, std::move(a), std::move(b), std::move(l), std::move(r));
}

const FormulaPtr kTrue = node(Formula::Kind::True);
const FormulaPtr kFalse = node(Formula::Kind::False);

}  // namespace

FormulaPtr top() { return kTrue; }
FormulaPtr bot() { return kFalse; }

FormulaPtr mem(Var x, Var y) { return node(Formula::Kind::Mem, std::move(x), std::move(y)); }
FormulaPtr eq(Var x, Var y) { return node(Formula::Kind::Eq, std::move(x), std::move(y)); }

FormulaPtr lnot(FormulaPtr f) { return node(Formula::Kind::Not, {}, {}, std::move(f)); }

FormulaPtr land(FormulaPtr l, FormulaPtr r) {
  return node(Formula::Kind::And, {}, {}, std::move(l), std::move(r));
}
FormulaPtr lor(FormulaPtr l, FormulaPtr r) {
  return node(Formula::Kind::Or, {}, {}, std::move(l), std::move(r));
}
FormulaPtr implies(FormulaPtr l, FormulaPtr r) {
  return node(Formula::Kind::Implies, {}, {}, std::move(l), std::move(r));
}
FormulaPtr iff(FormulaPtr l, FormulaPtr r) {
  return node(Formula::Kind::Iff, {}, {}, std::move(l), std::move(r));
}
FormulaPtr forall(Var v, FormulaPtr body) {
  return node(Formula::Kind::Forall, std::move(v), {}, std::move(body));
}
FormulaPtr exists(Var v, FormulaPtr body) {
  return node(Formula::Kind::Exists, std::move(v), {}, std::move(body));
}

FormulaPtr land_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return top();
  FormulaPtr acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = land(fs[i], acc);
  return acc;
}

FormulaPtr forall_all(const std::vector<Var>& vs, FormulaPtr body) {
  for (std::size_t i = vs.size(); i-- > 0;) body = forall(vs[i], body);
  return body;
}

FormulaPtr exists_all(const std::vector<Var>& vs, FormulaPtr body) {
  for (std::size_t i = vs.size(); i-- > 0;) body = exists(vs[i], body);
  return body;
}

namespace {

void free_vars_rec(const FormulaPtr& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Mem:
    case Formula::Kind::Eq:
      if (!bound.count(f->a)) out.insert(f->a);
      if (!bound.count(f->b)) out.insert(f->b);
      return;
    case Formula::Kind::Not:
      free_vars_rec(f->lhs, bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool fresh = bound.insert(f->a).second;
      free_vars_rec(f->lhs, bound, out);
      if (fresh) bound.erase(f->a);
      return;
    }
    default:
      free_vars_rec(f->lhs, bound, out);
      free_vars_rec(f->rhs, bound, out);
      return;
  }
}

void all_names_rec(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Mem:
    case Formula::Kind::Eq:
      out.insert(f->a.name);
      out.insert(f->b.name);
      return;
    case Formula::Kind::Not:
      all_names_rec(f->lhs, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out.insert(f->a.name);
      all_names_rec(f->lhs, out);
      return;
    default:
      all_names_rec(f->lhs, out);
      all_names_rec(f->rhs, out);
      return;
  }
}

}  // namespace

std::set<Var> free_vars(const FormulaPtr& f) {
  std::set<Var> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> all_names(const FormulaPtr& f) {
  std::set<std::string> out;
  all_names_rec(f, out);
  return out;
}

Var fresh_var(const std::string& base, std::set<std::string>& avoid) {
  if (!avoid.count(base)) {
    avoid.insert(base);
    return Var{base};
  }
  for (unsigned k = 1;; ++k) {
    std::string cand = base + std::to_string(k);
    if (!avoid.count(cand)) {
      avoid.insert(cand);
      return Var{cand};
    }
  }
}

namespace {

Var apply_map(const std::map<Var, Var>& m, const Var& v) {
  auto it = m.find(v);
  return it == m.end() ? v : it->second;
}

FormulaPtr subst_rec(const FormulaPtr& f, const std::map<Var, Var>& m,
                     std::set<std::string>& avoid) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Mem:
      return mem(apply_map(m, f->a), apply_map(m, f->b));
    case Formula::Kind::Eq:
      return eq(apply_map(m, f->a), apply_map(m, f->b));
    case Formula::Kind::Not:
      return lnot(subst_rec(f->lhs, m, avoid));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::map<Var, Var> inner = m;
      inner.erase(f->a);
      // Rename the binder if some mapped-in name would be captured.
      bool capture = false;
      for (const Var& fv : free_vars(f->lhs)) {
        if (fv == f->a) continue;
        if (apply_map(inner, fv) == f->a) {
          capture = true;
          break;
        }
      }
      Var binder = f->a;
      if (capture) {
        binder = fresh_var(f->a.name, avoid);
        inner[f->a] = binder;
      }
      FormulaPtr body = subst_rec(f->lhs, inner, avoid);
      return f->kind == Formula::Kind::Forall ? forall(binder, body) : exists(binder, body);
    }
    default: {
      FormulaPtr l = subst_rec(f->lhs, m, avoid);
      FormulaPtr r = subst_rec(f->rhs, m, avoid);
      return node(f->kind, {}, {}, std::move(l), std::move(r));
    }
  }
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::map<Var, Var>& m) {
  if (m.empty()) return f;
  std::set<std::string> avoid = all_names(f);
  for (const auto& [from, to] : m) {
    avoid.insert(from.name);
    avoid.insert(to.name);
  }
  return subst_rec(f, m, avoid);
}

namespace {

// Alpha-invariant comparison.  Bound variables compare by binder index
// (de Bruijn level); free variables by name.  A bound variable sorts
// before any free variable.
struct CmpEnv {
  std::unordered_map<std::string, int> levels;
  std::vector<std::pair<std::string, int>> saved;

  int lookup(const std::string& n) const {
    auto it = levels.find(n);
    return it == levels.end() ? -1 : it->second;
  }
};

int cmp_var(const Var& x, const CmpEnv& ex, const Var& y, const CmpEnv& ey) {
  int lx = ex.lookup(x.name);
  int ly = ey.lookup(y.name);
  if (lx >= 0 || ly >= 0) {
    if (lx < 0) return 1;   // free sorts after bound
    if (ly < 0) return -1;
    return lx < ly ? -1 : (lx > ly ? 1 : 0);
  }
  return x.name.compare(y.name) < 0 ? -1 : (x.name == y.name ? 0 : 1);
}

int cmp_rec(const FormulaPtr& f, CmpEnv& ef, const FormulaPtr& g, CmpEnv& eg, int depth) {
  if (f->kind != g->kind)
    return static_cast<int>(f->kind) < static_cast<int>(g->kind) ? -1 : 1;
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return 0;
    case Formula::Kind::Mem:
    case Formula::Kind::Eq: {
      if (int c = cmp_var(f->a, ef, g->a, eg)) return c;
      return cmp_var(f->b, ef, g->b, eg);
    }
    case Formula::Kind::Not:
      return cmp_rec(f->lhs, ef, g->lhs, eg, depth);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      int oldf = ef.lookup(f->a.name);
      int oldg = eg.lookup(g->a.name);
      ef.levels[f->a.name] = depth;
      eg.levels[g->a.name] = depth;
      int c = cmp_rec(f->lhs, ef, g->lhs, eg, depth + 1);
      if (oldf < 0) ef.levels.erase(f->a.name); else ef.levels[f->a.name] = oldf;
      if (oldg < 0) eg.levels.erase(g->a.name); else eg.levels[g->a.name] = oldg;
      return c;
    }
    default: {
      if (int c = cmp_rec(f->lhs, ef, g->lhs, eg, depth)) return c;
      return cmp_rec(f->rhs, ef, g->rhs, eg, depth);
    }
  }
}

}  // namespace

int alpha_compare(const FormulaPtr& f, const FormulaPtr& g) {
  if (f.get() == g.get()) return 0;
  CmpEnv ef, eg;
  return cmp_rec(f, ef, g, eg, 0);
}

bool alpha_eq(const FormulaPtr& f, const FormulaPtr& g) { return alpha_compare(f, g) == 0; }

bool struct_eq(const FormulaPtr& f, const FormulaPtr& g) {
  if (f.get() == g.get()) return true;
  if (f->kind != g->kind) return false;
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Mem:
    case Formula::Kind::Eq:
      return f->a == g->a && f->b == g->b;
    case Formula::Kind::Not:
      return struct_eq(f->lhs, g->lhs);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return f->a == g->a && struct_eq(f->lhs, g->lhs);
    default:
      return struct_eq(f->lhs, g->lhs) && struct_eq(f->rhs, g->rhs);
  }
}

namespace {

// Precedence: quantifier (0) < <-> (1) < -> (2) < \/ (3) < /\ (4) < ~ (5)
// < atom (6).  All binary connectives associate to the right.
int prec_of(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 0;
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

// `minp` is the lowest precedence printable without parentheses here.
void pretty_rec(const FormulaPtr& f, int minp, std::ostringstream& out) {
  int p = prec_of(f->kind);
  bool paren = p < minp;
  if (paren) out << "(";
  switch (f->kind) {
    case Formula::Kind::True:
      out << "true";
      break;
    case Formula::Kind::False:
      out << "false";
      break;
    case Formula::Kind::Mem:
      out << f->a.name << " in " << f->b.name;
      break;
    case Formula::Kind::Eq:
      out << f->a.name << " = " << f->b.name;
      break;
    case Formula::Kind::Not:
      out << "~";
      pretty_rec(f->lhs, p, out);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out << (f->kind == Formula::Kind::Forall ? "forall " : "exists ") << f->a.name << ". ";
      pretty_rec(f->lhs, 0, out);
      break;
    default: {
      const char* op = f->kind == Formula::Kind::And       ? " /\\ "
                       : f->kind == Formula::Kind::Or      ? " \\/ "
                       : f->kind == Formula::Kind::Implies ? " -> "
                                                           : " <-> ";
      pretty_rec(f->lhs, p + 1, out);  // equal precedence on the left needs parens
      out << op;
      pretty_rec(f->rhs, p, out);      // right-nested chains print flat
      break;
    }
  }
  if (paren) out << ")";
}

}  // namespace

std::string pretty(const FormulaPtr& f) {
  std::ostringstream out;
  pretty_rec(f, 0, out);
  return out.str();
}

std::uint64_t content_hash(const FormulaPtr& f) {
  std::string s = pretty(f);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t node_count(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Mem:
    case Formula::Kind::Eq:
      return 1;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return 1 + node_count(f->lhs);
    default:
      return 1 + node_count(f->lhs) + node_count(f->rhs);
  }
}

}  // namespace zfcat
