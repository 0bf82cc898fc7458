#include "zfcat/canonical.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace zfcat {

namespace {

using Kind = Formula::Kind;

// -- comparison under an environment of enclosing binders ---------------

struct Levels {
  std::unordered_map<std::string, std::vector<int>> stack;  // name -> levels
  int depth = 0;

  void push(const std::string& n) { stack[n].push_back(depth++); }
  void pop(const std::string& n) {
    auto& v = stack[n];
    v.pop_back();
    if (v.empty()) stack.erase(n);
    --depth;
  }
  int lookup(const std::string& n) const {
    auto it = stack.find(n);
    return it == stack.end() || it->second.empty() ? -1 : it->second.back();
  }
};

// Compare x under ex against y under ey.  With mask set, every bound
// variable compares equal to every other bound variable; that view is the
// primary sort key for conjuncts, so member order cannot depend on the
// names or the order of enclosing binders.
int cmp_var_pair(const Var& x, const Levels& ex, const Var& y, const Levels& ey, bool mask) {
  int lx = ex.lookup(x.name);
  int ly = ey.lookup(y.name);
  if (lx >= 0 || ly >= 0) {
    if (lx < 0) return 1;
    if (ly < 0) return -1;
    if (mask) return 0;
    return lx < ly ? -1 : (lx > ly ? 1 : 0);
  }
  return x.name.compare(y.name) < 0 ? -1 : (x.name == y.name ? 0 : 1);
}

int cmp_pair(const FormulaPtr& f, Levels& ef, const FormulaPtr& g, Levels& eg, bool mask) {
  if (f->kind != g->kind) return static_cast<int>(f->kind) < static_cast<int>(g->kind) ? -1 : 1;
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
      return 0;
    case Kind::Mem:
    case Kind::Eq: {
      if (int c = cmp_var_pair(f->a, ef, g->a, eg, mask)) return c;
      return cmp_var_pair(f->b, ef, g->b, eg, mask);
    }
    case Kind::Not:
      return cmp_pair(f->lhs, ef, g->lhs, eg, mask);
    case Kind::Forall:
    case Kind::Exists: {
      ef.push(f->a.name);
      eg.push(g->a.name);
      int c = cmp_pair(f->lhs, ef, g->lhs, eg, mask);
      ef.pop(f->a.name);
      eg.pop(g->a.name);
      return c;
    }
    default: {
      if (int c = cmp_pair(f->lhs, ef, g->lhs, eg, mask)) return c;
      return cmp_pair(f->rhs, ef, g->rhs, eg, mask);
    }
  }
}

// Conjunct order: bound-masked comparison first (binder-order independent),
// then the level-aware comparison as a tiebreak, both under `env`.
int conjunct_cmp(const FormulaPtr& a, const FormulaPtr& b, const Levels& env) {
  Levels e1 = env, e2 = env;
  if (int c = cmp_pair(a, e1, b, e2, /*mask=*/true)) return c;
  Levels e3 = env, e4 = env;
  return cmp_pair(a, e3, b, e4, /*mask=*/false);
}

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == Kind::And) {
    flatten_and(f->lhs, out);
    flatten_and(f->rhs, out);
  } else {
    out.push_back(f);
  }
}

struct Normalizer {
  Levels env;

  FormulaPtr normalize(const FormulaPtr& f) {
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Mem:
        return f;
      case Kind::Eq:
        // A reflexive equation on a bound variable is inert; one on a free
        // variable is kept here (it still pins that variable as free) and
        // may only be dropped as a conjunct when a sibling carries it.
        return f->a == f->b && env.lookup(f->a.name) >= 0 ? top() : f;
      case Kind::Not:
        return lnot(normalize(f->lhs));
      case Kind::Or:
        return lor(normalize(f->lhs), normalize(f->rhs));
      case Kind::Implies:
        return implies(normalize(f->lhs), normalize(f->rhs));
      case Kind::Iff:
        return iff(normalize(f->lhs), normalize(f->rhs));
      case Kind::Forall: {
        env.push(f->a.name);
        FormulaPtr b = normalize(f->lhs);
        env.pop(f->a.name);
        // Domains are nonempty, so a trivial body decides the quantifier.
        if (b->kind == Kind::True) return top();
        if (b->kind == Kind::False) return bot();
        return forall(f->a, b);
      }
      case Kind::Exists:
        return normalize_exists(f->a, f->lhs, /*body_normalized=*/false);
      case Kind::And:
        return normalize_and(f);
    }
    throw std::logic_error("normalize: bad kind");
  }

  FormulaPtr normalize_exists(const Var& v, const FormulaPtr& raw_body, bool body_normalized) {
    FormulaPtr body = raw_body;
    if (!body_normalized) {
      env.push(v.name);
      body = normalize(raw_body);
      env.pop(v.name);
    }
    if (body->kind == Kind::False) return bot();
    if (body->kind == Kind::True) return top();

    // Work on the maximal existential prefix as one flat block, so an
    // equation sitting below a later binder still enables elimination.
    // Shadowed spine binders are renamed apart first; the concluding
    // alpha-normalization erases the choice of replacement names.
    std::vector<Var> vars{v};
    std::set<std::string> spine{v.name};
    FormulaPtr core = body;
    while (core->kind == Kind::Exists) {
      Var w = core->a;
      FormulaPtr inner = core->lhs;
      if (spine.count(w.name)) {
        std::set<std::string> avoid = all_names(core);
        avoid.insert(spine.begin(), spine.end());
        Var w2 = fresh_var(w.name, avoid);
        inner = substitute(inner, {{w, w2}});
        w = w2;
      }
      spine.insert(w.name);
      vars.push_back(w);
      core = inner;
    }
    std::vector<FormulaPtr> members;
    flatten_and(core, members);

    auto rebuild = [&](const std::vector<FormulaPtr>& ms, std::size_t skip_var) {
      FormulaPtr g = land_all(ms);
      for (std::size_t k = vars.size(); k-- > 0;)
        if (k != skip_var) g = exists(vars[k], g);
      return normalize(g);
    };

    // One-point rule: a conjunct u = t (or t = u) for a block binder u, with
    // t distinct from u and u occurring in the remainder.
    for (std::size_t bi = 0; bi < vars.size(); ++bi) {
      const Var& u = vars[bi];
      for (std::size_t i = 0; i < members.size(); ++i) {
        const FormulaPtr& m = members[i];
        if (m->kind != Kind::Eq) continue;
        Var t;
        if (m->a == u && m->b != u) t = m->b;
        else if (m->b == u && m->a != u) t = m->a;
        else continue;
        std::vector<FormulaPtr> rest;
        for (std::size_t j = 0; j < members.size(); ++j)
          if (j != i) rest.push_back(members[j]);
        if (rest.empty()) continue;  // exists u. u = t is kept (drops t otherwise)
        FormulaPtr remainder = land_all(rest);
        if (!free_vars(remainder).count(u)) continue;
        std::vector<FormulaPtr> substituted{substitute(remainder, {{u, t}})};
        return rebuild(substituted, bi);
      }
    }

    // Witness subsumption: a binder whose conjuncts mention no other block
    // binder and reappear verbatim under a second binder is redundant (the
    // surviving binder witnesses it).  Composing with an identity arrow
    // duplicates typing conjuncts in exactly this way.
    for (std::size_t bi = 0; bi < vars.size(); ++bi) {
      const Var& drop = vars[bi];
      for (std::size_t bj = 0; bj < vars.size(); ++bj) {
        if (bj == bi) continue;
        const Var& keep = vars[bj];
        std::vector<FormulaPtr> mine, rest;
        bool clean = true;
        for (const FormulaPtr& m : members) {
          std::set<Var> fv = free_vars(m);
          if (!fv.count(drop)) {
            rest.push_back(m);
            continue;
          }
          for (const Var& w : vars)
            if (w != drop && fv.count(w)) clean = false;
          mine.push_back(m);
        }
        if (!clean || mine.empty()) continue;
        bool subsumed = true;
        for (const FormulaPtr& m : mine) {
          FormulaPtr renamed = substitute(m, {{drop, keep}});
          bool found = false;
          for (const FormulaPtr& r : rest)
            if (alpha_compare(renamed, r) == 0) { found = true; break; }
          if (!found) { subsumed = false; break; }
        }
        if (subsumed) return rebuild(rest, bi);
      }
    }

    // Component subsumption: members connected through shared binders form
    // independent factors of the block; a factor alpha-equal to another is
    // redundant.  This merges duplicated multi-witness groups (e.g. two
    // copies of an ordered-pair elaboration) that the single-binder rule
    // cannot see.
    {
      std::vector<int> comp(vars.size());
      for (std::size_t i = 0; i < vars.size(); ++i) comp[i] = static_cast<int>(i);
      auto root = [&](int i) {
        while (comp[static_cast<std::size_t>(i)] != i) i = comp[static_cast<std::size_t>(i)];
        return i;
      };
      auto unite = [&](int i, int j) { comp[static_cast<std::size_t>(root(i))] = root(j); };

      std::vector<std::vector<int>> touched(members.size());
      for (std::size_t mi = 0; mi < members.size(); ++mi) {
        std::set<Var> fv = free_vars(members[mi]);
        for (std::size_t bi = 0; bi < vars.size(); ++bi)
          if (fv.count(vars[bi])) touched[mi].push_back(static_cast<int>(bi));
        for (std::size_t k = 1; k < touched[mi].size(); ++k)
          unite(touched[mi][0], touched[mi][k]);
      }

      std::map<int, std::vector<Var>> comp_vars;
      std::map<int, std::vector<FormulaPtr>> comp_members;
      for (std::size_t bi = 0; bi < vars.size(); ++bi)
        comp_vars[root(static_cast<int>(bi))].push_back(vars[bi]);
      for (std::size_t mi = 0; mi < members.size(); ++mi)
        if (!touched[mi].empty())
          comp_members[root(touched[mi][0])].push_back(members[mi]);

      if (comp_vars.size() >= 2) {
        std::map<int, FormulaPtr> factor;
        for (const auto& [id, cvs] : comp_vars)
          factor[id] = canonicalize(exists_all(cvs, land_all(comp_members[id])));
        for (auto it = factor.begin(); it != factor.end(); ++it) {
          for (auto jt = factor.begin(); jt != it; ++jt) {
            if (!alpha_eq(it->second, jt->second)) continue;
            // drop the later component entirely
            std::set<std::string> dead;
            for (const Var& w : comp_vars[it->first]) dead.insert(w.name);
            std::vector<FormulaPtr> survivors;
            for (std::size_t mi = 0; mi < members.size(); ++mi) {
              bool in_dead = !touched[mi].empty() &&
                             root(touched[mi][0]) == it->first;
              if (!in_dead) survivors.push_back(members[mi]);
            }
            FormulaPtr g = land_all(survivors);
            for (std::size_t k = vars.size(); k-- > 0;)
              if (!dead.count(vars[k].name)) g = exists(vars[k], g);
            return normalize(g);
          }
        }
      }
    }

    return exists(v, body);
  }

  FormulaPtr normalize_and(const FormulaPtr& f) {
    std::vector<FormulaPtr> raw;
    flatten_and(f, raw);
    std::vector<FormulaPtr> members;
    for (const FormulaPtr& m : raw) {
      FormulaPtr n = normalize(m);
      if (n->kind == Kind::False) return bot();
      if (n->kind == Kind::True) continue;
      if (n->kind == Kind::And) {
        flatten_and(n, members);
      } else {
        members.push_back(n);
      }
    }
    // Hoist the first existential member over the rest of the chain.
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i]->kind != Kind::Exists) continue;
      Var w = members[i]->a;
      FormulaPtr inner = members[i]->lhs;
      std::vector<FormulaPtr> others;
      for (std::size_t j = 0; j < members.size(); ++j)
        if (j != i) others.push_back(members[j]);
      bool clash = false;
      for (const FormulaPtr& o : others)
        if (free_vars(o).count(w)) { clash = true; break; }
      if (clash || env.lookup(w.name) >= 0) {
        std::set<std::string> avoid;
        for (const FormulaPtr& m : members) {
          auto names = all_names(m);
          avoid.insert(names.begin(), names.end());
        }
        for (const auto& [n, v] : env.stack) { (void)v; avoid.insert(n); }
        Var w2 = fresh_var(w.name, avoid);
        inner = substitute(inner, {{w, w2}});
        w = w2;
      }
      others.insert(others.begin(), inner);
      env.push(w.name);
      FormulaPtr merged = normalize(land_all(others));
      env.pop(w.name);
      return normalize_exists(w, merged, /*body_normalized=*/true);
    }
    if (members.empty()) return top();
    std::stable_sort(members.begin(), members.end(),
                     [&](const FormulaPtr& a, const FormulaPtr& b) {
                       return conjunct_cmp(a, b, env) < 0;
                     });
    std::vector<FormulaPtr> dedup;
    for (const FormulaPtr& m : members) {
      if (!dedup.empty() && conjunct_cmp(dedup.back(), m, env) == 0) continue;
      dedup.push_back(m);
    }
    // Drop x = x conjuncts whose variable some sibling keeps free, so the
    // chain's free variables are unchanged.  Deciding every candidate
    // against the pre-drop sibling list is order-independent: a supporting
    // sibling is never itself a dropped candidate.
    std::vector<FormulaPtr> kept;
    for (std::size_t i = 0; i < dedup.size(); ++i) {
      const FormulaPtr& m = dedup[i];
      if (m->kind == Kind::Eq && m->a == m->b) {
        bool supported = false;
        for (std::size_t j = 0; j < dedup.size() && !supported; ++j)
          if (j != i && free_vars(dedup[j]).count(m->a)) supported = true;
        if (supported) continue;
      }
      kept.push_back(m);
    }
    if (kept.empty()) return top();
    return land_all(kept);
  }
};

// -- quantifier block reordering ----------------------------------------

// Occurrence signature of a block variable inside the block body: a sorted
// list of (conjunct class, operand slot, node index) triples computed on a
// bound-masked view, so it does not depend on binder names or block order.
using Sig = std::vector<std::array<int, 3>>;

void collect_occurrences(const FormulaPtr& f, const Var& v, int cls, int& counter,
                         std::set<std::string>& shadow, Sig& out) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
      ++counter;
      return;
    case Kind::Mem:
    case Kind::Eq: {
      int idx = counter++;
      if (!shadow.count(v.name)) {
        if (f->a == v) out.push_back({cls, 0, idx});
        if (f->b == v) out.push_back({cls, 1, idx});
      }
      return;
    }
    case Kind::Not:
      ++counter;
      collect_occurrences(f->lhs, v, cls, counter, shadow, out);
      return;
    case Kind::Forall:
    case Kind::Exists: {
      ++counter;
      bool fresh = shadow.insert(f->a.name).second;
      collect_occurrences(f->lhs, v, cls, counter, shadow, out);
      if (fresh) shadow.erase(f->a.name);
      return;
    }
    default:
      ++counter;
      collect_occurrences(f->lhs, v, cls, counter, shadow, out);
      collect_occurrences(f->rhs, v, cls, counter, shadow, out);
      return;
  }
}

FormulaPtr block_sort(const FormulaPtr& f, Levels& env);
FormulaPtr alpha_normalize(const FormulaPtr& f);

// Sort the variables of one maximal same-kind quantifier block.
FormulaPtr sort_block(Kind kind, std::vector<Var> vars, FormulaPtr body, Levels& env) {
  // Conjunct classes on the bound-masked view.
  std::vector<FormulaPtr> members;
  flatten_and(body, members);
  std::vector<int> cls(members.size());
  {
    // Rank each member among the distinct masked-equal classes.
    std::vector<std::size_t> order(members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto masked_cmp = [&](std::size_t a, std::size_t b) {
      Levels e1 = env, e2 = env;
      for (const Var& v : vars) { e1.push(v.name); e2.push(v.name); }
      int c = cmp_pair(members[a], e1, members[b], e2, /*mask=*/true);
      return c;
    };
    std::vector<std::size_t> sorted = order;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](std::size_t a, std::size_t b) { return masked_cmp(a, b) < 0; });
    int next = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (k > 0 && masked_cmp(sorted[k - 1], sorted[k]) != 0) ++next;
      cls[sorted[k]] = next;
    }
  }
  std::vector<Sig> sigs(vars.size());
  for (std::size_t vi = 0; vi < vars.size(); ++vi) {
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
      int counter = 0;
      std::set<std::string> shadow;
      collect_occurrences(members[mi], vars[vi], cls[mi], counter, shadow, sigs[vi]);
    }
    std::sort(sigs[vi].begin(), sigs[vi].end());
  }
  std::vector<std::size_t> idx(vars.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return sigs[a] < sigs[b]; });

  // Group ties and resolve small groups by trying permutations, keeping the
  // arrangement whose alpha-normal form is least.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || sigs[idx[i]] != sigs[idx[i - 1]]) groups.push_back({});
    groups.back().push_back(idx[i]);
  }
  auto build = [&](const std::vector<std::size_t>& arrangement) {
    FormulaPtr g = body;
    for (std::size_t i = arrangement.size(); i-- > 0;) {
      g = kind == Kind::Exists ? exists(vars[arrangement[i]], g)
                               : forall(vars[arrangement[i]], g);
    }
    return g;
  };
  std::size_t perm_budget = 1;
  for (const auto& g : groups) {
    for (std::size_t k = 2; k <= g.size(); ++k) perm_budget *= k;
    if (perm_budget > 720) break;
  }
  std::vector<std::size_t> arrangement;
  if (perm_budget <= 720 && groups.size() > 0) {
    // Enumerate the product of group permutations.
    std::vector<std::vector<std::vector<std::size_t>>> perms_per_group;
    for (auto g : groups) {
      std::vector<std::vector<std::size_t>> ps;
      std::sort(g.begin(), g.end());
      do { ps.push_back(g); } while (std::next_permutation(g.begin(), g.end()));
      perms_per_group.push_back(std::move(ps));
    }
    std::vector<std::size_t> choice(groups.size(), 0);
    FormulaPtr best;
    std::vector<std::size_t> best_arr;
    while (true) {
      std::vector<std::size_t> arr;
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& p = perms_per_group[gi][choice[gi]];
        arr.insert(arr.end(), p.begin(), p.end());
      }
      FormulaPtr cand = alpha_normalize(build(arr));
      if (!best || alpha_compare(cand, best) < 0) {
        best = cand;
        best_arr = arr;
      }
      std::size_t gi = 0;
      while (gi < groups.size() && ++choice[gi] == perms_per_group[gi].size()) {
        choice[gi] = 0;
        ++gi;
      }
      if (gi == groups.size()) break;
    }
    arrangement = best_arr;
  } else {
    for (const auto& g : groups) arrangement.insert(arrangement.end(), g.begin(), g.end());
  }
  return build(arrangement);
}

FormulaPtr block_sort(const FormulaPtr& f, Levels& env) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Mem:
    case Kind::Eq:
      return f;
    case Kind::Not:
      return lnot(block_sort(f->lhs, env));
    case Kind::And:
      return land(block_sort(f->lhs, env), block_sort(f->rhs, env));
    case Kind::Or:
      return lor(block_sort(f->lhs, env), block_sort(f->rhs, env));
    case Kind::Implies:
      return implies(block_sort(f->lhs, env), block_sort(f->rhs, env));
    case Kind::Iff:
      return iff(block_sort(f->lhs, env), block_sort(f->rhs, env));
    case Kind::Forall:
    case Kind::Exists: {
      Kind kind = f->kind;
      std::vector<Var> vars;
      FormulaPtr cur = f;
      while (cur->kind == kind) {
        vars.push_back(cur->a);
        cur = cur->lhs;
      }
      for (const Var& v : vars) env.push(v.name);
      FormulaPtr body = block_sort(cur, env);
      for (std::size_t i = vars.size(); i-- > 0;) env.pop(vars[i].name);
      if (vars.size() < 2) {
        return kind == Kind::Exists ? exists(vars[0], body) : forall(vars[0], body);
      }
      return sort_block(kind, std::move(vars), std::move(body), env);
    }
  }
  throw std::logic_error("block_sort: bad kind");
}

// -- alpha-normal renaming ----------------------------------------------

struct Renamer {
  std::set<std::string> taken;  // free names of the whole formula
  int counter = 0;

  std::string next() {
    while (true) {
      std::string cand = "v" + std::to_string(++counter);
      if (!taken.count(cand)) return cand;
    }
  }

  FormulaPtr go(const FormulaPtr& f, std::map<Var, Var>& ren) {
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
        return f;
      case Kind::Mem:
      case Kind::Eq: {
        auto lookup = [&](const Var& v) {
          auto it = ren.find(v);
          return it == ren.end() ? v : it->second;
        };
        return f->kind == Kind::Mem ? mem(lookup(f->a), lookup(f->b))
                                    : eq(lookup(f->a), lookup(f->b));
      }
      case Kind::Not:
        return lnot(go(f->lhs, ren));
      case Kind::Forall:
      case Kind::Exists: {
        Var nv{next()};
        auto it = ren.find(f->a);
        bool had = it != ren.end();
        Var old = had ? it->second : Var{};
        ren[f->a] = nv;
        FormulaPtr b = go(f->lhs, ren);
        if (had) ren[f->a] = old; else ren.erase(f->a);
        return f->kind == Kind::Forall ? forall(nv, b) : exists(nv, b);
      }
      default: {
        FormulaPtr l = go(f->lhs, ren);
        FormulaPtr r = go(f->rhs, ren);
        switch (f->kind) {
          case Kind::And: return land(l, r);
          case Kind::Or: return lor(l, r);
          case Kind::Implies: return implies(l, r);
          default: return iff(l, r);
        }
      }
    }
  }
};

FormulaPtr alpha_normalize(const FormulaPtr& f) {
  Renamer r;
  for (const Var& v : free_vars(f)) r.taken.insert(v.name);
  std::map<Var, Var> ren;
  return r.go(f, ren);
}

}  // namespace

FormulaPtr canonicalize(const FormulaPtr& f) {
  Normalizer n1;
  FormulaPtr g = n1.normalize(f);
  Levels env;
  g = block_sort(g, env);
  Normalizer n2;  // re-sort conjuncts under the final binder order
  g = n2.normalize(g);
  return alpha_normalize(g);
}

Obligation canonicalize(const Obligation& ob) {
  Obligation out = ob;
  for (FormulaPtr& h : out.hyps) h = canonicalize(h);
  out.goal = canonicalize(ob.goal);
  return out;
}

}  // namespace zfcat
