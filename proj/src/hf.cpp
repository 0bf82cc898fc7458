#include "zfcat/hf.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <unordered_map>

#include "zfcat/obligation.hpp"

namespace zfcat {

// -- HFSet --------------------------------------------------------------------

std::vector<HFSet> HFSet::elements() const {
  std::vector<HFSet> out;
  for (int i = 0; i < 64; ++i)
    if ((code >> i) & 1u) out.push_back(HFSet{static_cast<std::uint64_t>(i)});
  return out;
}

int HFSet::rank() const {
  int r = 0;
  for (const HFSet& e : elements()) r = std::max(r, e.rank() + 1);
  return r;
}

std::string to_string(const HFSet& s) {
  std::string out = "{";
  bool first = true;
  for (const HFSet& e : s.elements()) {
    if (!first) out += ",";
    first = false;
    out += to_string(e);
  }
  return out + "}";
}

// -- Universe -------------------------------------------------------------------

namespace {
constexpr std::uint64_t kRankSizes[] = {0, 1, 2, 4, 16, 65536};
}

Universe Universe::rank(int n) {
  // |V_{n+1}| = 2^|V_n|; past V_5 the element coding outgrows 64 bits.
  if (n < 0 || n > 5) throw std::invalid_argument("rank universe limited to V_0..V_5");
  return Universe(Kind::Rank, kRankSizes[n]);
}

Universe Universe::code_prefix(std::uint64_t n) {
  if (n > (std::uint64_t{1} << 20))
    throw std::invalid_argument("code prefix universe too large");
  return Universe(Kind::CodePrefix, n);
}

std::string Universe::name() const {
  if (kind_ == Kind::Rank) {
    for (int i = 0; i <= 5; ++i)
      if (kRankSizes[i] == size_) return "V" + std::to_string(i);
  }
  return "prefix:" + std::to_string(size_);
}

// -- compiled form ----------------------------------------------------------------
//
// Formulas are compiled once per engine into a slot-addressed node tree.
// Quantifier runs become Blocks searched with constraint propagation; the
// defining conjuncts the elaborator emits ("forall u. u in v <-> psi") are
// recognized as extension definitions so the search computes v (or reads
// psi's parameters back out of v) instead of looping over the universe.

namespace {

constexpr std::uint64_t kUnset = ~std::uint64_t{0};

struct Node {
  enum class Op { True, False, Mem, Eq, Not, And, Or, Implies, Iff, Block, ExtDef };
  // psi shapes with closed-form witness sets
  enum class Psi { General, Never, EqOne, Upair, Sigma, Union };

  Op op;
  int a = -1, b = -1;      // Mem(a,b) "a in b"; Eq(a,b); ExtDef: a = v, b = u
  bool is_forall = false;  // Block
  bool scans = false;      // evaluation may enumerate the whole universe
  std::vector<int> slots;  // Block bound slots
  std::vector<Node> kids;  // children; Block members; ExtDef psi at kids[0]
  std::vector<int> free;   // free slots, sorted
  int weight = 1;          // subtree size, for cheap-first member ordering
  int block_id = -1;       // memo table index (Block only)

  Psi psi = Psi::General;
  int p0 = -1, p1 = -1;  // psi parameter slots
};

std::vector<int> merge_free(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

void remove_slots(std::vector<int>& vs, const std::vector<int>& bound) {
  vs.erase(std::remove_if(vs.begin(), vs.end(),
                          [&](int s) {
                            return std::find(bound.begin(), bound.end(), s) != bound.end();
                          }),
           vs.end());
}

struct Compiler {
  std::vector<std::pair<std::string, int>> scope;  // name -> slot, innermost last
  int nslots = 0;

  int lookup(const std::string& n) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == n) return it->second;
    throw std::invalid_argument("unbound free variable '" + n + "'");
  }

  int push(const std::string& n) {
    int s = nslots++;
    scope.emplace_back(n, s);
    return s;
  }
  void pop() { scope.pop_back(); }

  static Node leaf(Node::Op op) {
    Node n;
    n.op = op;
    return n;
  }

  static std::vector<Node> one(Node n) {
    std::vector<Node> v;
    v.push_back(std::move(n));
    return v;
  }

  Node atom(Node::Op op, const Var& x, const Var& y) {
    Node n;
    n.op = op;
    n.a = lookup(x.name);
    n.b = lookup(y.name);
    n.free = {n.a};
    if (n.b != n.a) n.free = merge_free(n.free, {n.b});
    return n;
  }

  Node composite(Node::Op op, std::vector<Node> kids) {
    Node n;
    n.op = op;
    for (Node& k : kids) {
      n.free = merge_free(n.free, k.free);
      n.weight += k.weight;
      n.scans = n.scans || k.scans;
    }
    n.kids = std::move(kids);
    return n;
  }

  // Deferred-last ordering: members that may loop over the whole universe
  // run after members whose search stays within propagated candidate sets.
  static bool cheaper(const Node& x, const Node& y) {
    if (x.scans != y.scans) return y.scans;
    return x.weight < y.weight;
  }

  // Can the block's search assign every bound slot by propagation and
  // membership-bounded branching alone?  Mirrors the dynamic rules in
  // search(): Eq copies across, a membership test bounds its element once
  // the container is known, and extension definitions compute forward or
  // project components back out of a known set.
  static bool block_bounded(const Node& n) {
    std::set<int> known(n.free.begin(), n.free.end());
    bool progress = true;
    auto add = [&](int s) {
      if (s >= 0 && known.insert(s).second) progress = true;
    };
    while (progress) {
      progress = false;
      for (const Node& m : n.kids) {
        if (m.op == Node::Op::Eq) {
          if (known.count(m.a) || known.count(m.b)) {
            add(m.a);
            add(m.b);
          }
        } else if (m.op == Node::Op::Mem) {
          if (known.count(m.b)) add(m.a);
        } else if (m.op == Node::Op::ExtDef) {
          bool deps_known = true;
          for (int s : m.free)
            if (s != m.a && !known.count(s)) deps_known = false;
          if (deps_known) add(m.a);
          if (known.count(m.a)) {
            if (m.psi == Node::Psi::EqOne || m.psi == Node::Psi::Sigma) add(m.p0);
            if (m.psi == Node::Psi::Upair) {
              add(m.p0);
              add(m.p1);
            }
          }
        }
      }
    }
    for (int s : n.slots)
      if (!known.count(s)) return false;
    return true;
  }

  // Match "forall u. u in v <-> psi" or "forall u. ~(u in v)", u the bound
  // variable and v any other variable.
  static bool extdef_match(const FormulaPtr& f) {
    if (f->kind != Formula::Kind::Forall) return false;
    const FormulaPtr& body = f->lhs;
    const std::string& u = f->a.name;
    if (body->kind == Formula::Kind::Not) {
      const FormulaPtr& m = body->lhs;
      return m->kind == Formula::Kind::Mem && m->a.name == u && m->b.name != u;
    }
    if (body->kind != Formula::Kind::Iff) return false;
    const FormulaPtr& l = body->lhs;
    return l->kind == Formula::Kind::Mem && l->a.name == u && l->b.name != u;
  }

  Node compile_extdef(const FormulaPtr& f) {
    Node n;
    n.op = Node::Op::ExtDef;
    const FormulaPtr& body = f->lhs;
    if (body->kind == Formula::Kind::Not) {
      n.a = lookup(body->lhs->b.name);
      n.psi = Node::Psi::Never;
      n.b = push(f->a.name);
      pop();
      n.kids.push_back(leaf(Node::Op::False));
      n.free = {n.a};
      n.weight = 2;
      return n;
    }
    n.a = lookup(body->lhs->b.name);
    n.b = push(f->a.name);
    Node psi = compile(body->rhs);
    pop();
    classify_psi(n, psi);
    // Only the general fallback enumerates candidate extensions; the
    // recognized shapes have closed-form witness sets.
    n.scans = n.psi == Node::Psi::General;
    n.free = merge_free(std::vector<int>{n.a}, psi.free);
    remove_slots(n.free, {n.b});
    n.weight = 1 + psi.weight;
    n.kids.push_back(std::move(psi));
    return n;
  }

  void classify_psi(Node& n, const Node& psi) {
    int u = n.b;
    auto eq_on_u = [&](const Node& m, int& param) {
      if (m.op != Node::Op::Eq) return false;
      if (m.a == u && m.b != u) {
        param = m.b;
        return true;
      }
      if (m.b == u && m.a != u) {
        param = m.a;
        return true;
      }
      return false;
    };
    int p = -1, q = -1;
    if (psi.op == Node::Op::False) {
      n.psi = Node::Psi::Never;
      return;
    }
    if (eq_on_u(psi, p)) {
      n.psi = Node::Psi::EqOne;
      n.p0 = p;
      return;
    }
    if (psi.op == Node::Op::Or && psi.kids.size() == 2) {
      if (eq_on_u(psi.kids[0], p) && eq_on_u(psi.kids[1], q)) {
        n.psi = Node::Psi::Upair;
        n.p0 = p;
        n.p1 = q;
        return;
      }
      // u in t \/ u = t  (successor)
      const Node& l = psi.kids[0];
      if (l.op == Node::Op::Mem && l.a == u && eq_on_u(psi.kids[1], q) && l.b == q) {
        n.psi = Node::Psi::Sigma;
        n.p0 = q;
        return;
      }
    }
    // exists y. u in y /\ y in t  (union)
    if (psi.op == Node::Op::Block && !psi.is_forall && psi.slots.size() == 1 &&
        psi.kids.size() == 2) {
      int y = psi.slots[0];
      const Node *muy = nullptr, *myt = nullptr;
      for (const Node& m : psi.kids) {
        if (m.op != Node::Op::Mem) return;
        if (m.a == u && m.b == y)
          muy = &m;
        else if (m.a == y && m.b != u && m.b != y)
          myt = &m;
      }
      if (muy && myt) {
        n.psi = Node::Psi::Union;
        n.p0 = myt->b;
      }
    }
  }

  // Conjunctive decompositions: pos_members(f) yields nodes whose
  // conjunction is f, neg_members(f) nodes whose conjunction is ~f.
  void pos_members(const FormulaPtr& f, std::vector<Node>& out) {
    switch (f->kind) {
      case Formula::Kind::And:
        pos_members(f->lhs, out);
        pos_members(f->rhs, out);
        return;
      case Formula::Kind::Not:
        neg_members(f->lhs, out);
        return;
      case Formula::Kind::True:
        return;
      default:
        out.push_back(compile(f));
        return;
    }
  }

  void neg_members(const FormulaPtr& f, std::vector<Node>& out) {
    switch (f->kind) {
      case Formula::Kind::Implies:
        pos_members(f->lhs, out);
        neg_members(f->rhs, out);
        return;
      case Formula::Kind::Or:
        neg_members(f->lhs, out);
        neg_members(f->rhs, out);
        return;
      case Formula::Kind::Not:
        pos_members(f->lhs, out);
        return;
      case Formula::Kind::False:
        return;
      default:
        out.push_back(composite(Node::Op::Not, one(compile(f))));
        return;
    }
  }

  Node compile_block(const FormulaPtr& f) {
    Formula::Kind kind = f->kind;
    Node n;
    n.op = Node::Op::Block;
    n.is_forall = kind == Formula::Kind::Forall;
    FormulaPtr cur = f;
    std::size_t pushed = 0;
    // Collect the maximal same-kind prefix, but stop a forall run before an
    // extension definition so the inner forall keeps its special form.
    while (cur->kind == kind && !(n.is_forall && pushed > 0 && extdef_match(cur))) {
      n.slots.push_back(push(cur->a.name));
      ++pushed;
      cur = cur->lhs;
    }
    std::vector<Node> members;
    if (n.is_forall)
      neg_members(cur, members);  // forall xs. B  ==  ~exists xs. ~B
    else
      pos_members(cur, members);
    // Adopt nested existential blocks (conjunctive position only): their
    // slots join this search, so membership constraints buried in a chain
    // like "exists w. w = {s} /\ exists w1. ... /\ w2 in f" are visible to
    // the branching heuristic instead of forcing a universe-wide scan of
    // the outer variable.
    {
      std::vector<Node> flat;
      std::vector<Node> queue = std::move(members);
      while (!queue.empty()) {
        Node m = std::move(queue.front());
        queue.erase(queue.begin());
        if (m.op == Node::Op::Block && !m.is_forall) {
          for (int s : m.slots) n.slots.push_back(s);
          for (Node& k : m.kids) queue.push_back(std::move(k));
        } else {
          flat.push_back(std::move(m));
        }
      }
      members = std::move(flat);
    }
    if (members.size() > 60)
      throw std::logic_error("quantifier block too wide for the search engine");
    // Cheap members first: the search visits pending members in list order.
    std::stable_sort(members.begin(), members.end(), cheaper);
    for (Node& m : members) {
      n.free = merge_free(n.free, m.free);
      n.weight += m.weight;
      n.scans = n.scans || m.scans;
    }
    n.kids = std::move(members);
    remove_slots(n.free, n.slots);
    if (!block_bounded(n)) n.scans = true;
    for (std::size_t i = 0; i < pushed; ++i) pop();
    return n;
  }

  Node compile(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::True:
        return leaf(Node::Op::True);
      case Formula::Kind::False:
        return leaf(Node::Op::False);
      case Formula::Kind::Mem:
        return atom(Node::Op::Mem, f->a, f->b);
      case Formula::Kind::Eq:
        return atom(Node::Op::Eq, f->a, f->b);
      case Formula::Kind::Not:
        return composite(Node::Op::Not, one(compile(f->lhs)));
      case Formula::Kind::And: {
        std::vector<Node> ms;
        pos_members(f, ms);
        if (ms.empty()) return leaf(Node::Op::True);
        if (ms.size() == 1) return std::move(ms[0]);
        std::stable_sort(ms.begin(), ms.end(), cheaper);
        return composite(Node::Op::And, std::move(ms));
      }
      case Formula::Kind::Or: {
        std::vector<Node> ms;
        ms.push_back(compile(f->lhs));
        ms.push_back(compile(f->rhs));
        std::stable_sort(ms.begin(), ms.end(), cheaper);
        return composite(Node::Op::Or, std::move(ms));
      }
      case Formula::Kind::Implies: {
        std::vector<Node> ms;
        ms.push_back(compile(f->lhs));
        ms.push_back(compile(f->rhs));
        return composite(Node::Op::Implies, std::move(ms));
      }
      case Formula::Kind::Iff: {
        std::vector<Node> ms;
        ms.push_back(compile(f->lhs));
        ms.push_back(compile(f->rhs));
        return composite(Node::Op::Iff, std::move(ms));
      }
      case Formula::Kind::Forall:
        if (extdef_match(f)) return compile_extdef(f);
        return compile_block(f);
      case Formula::Kind::Exists:
        return compile_block(f);
    }
    throw std::logic_error("compile: unhandled kind");
  }
};

void assign_block_ids(Node& n, int& next) {
  if (n.op == Node::Op::Block) n.block_id = next++;
  for (Node& k : n.kids) assign_block_ids(k, next);
}

// -- engine ----------------------------------------------------------------------

class Engine {
 public:
  Engine(const FormulaPtr& f, const std::vector<Var>& free_order, const Universe& u,
         const EvalOptions& opts)
      : u_(u), budget_(opts.budget) {
    Compiler c;
    for (const Var& v : free_order) c.push(v.name);
    root_ = c.compile(f);
    nfree_ = static_cast<int>(free_order.size());
    slots_.assign(static_cast<std::size_t>(c.nslots), kUnset);
    int nblocks = 0;
    assign_block_ids(root_, nblocks);
    memo64_.resize(static_cast<std::size_t>(nblocks));
    memo_wide_.resize(static_cast<std::size_t>(nblocks));
    int b = 1;
    while ((std::uint64_t{1} << b) < u_.size()) ++b;
    value_bits_ = b;
  }

  bool run(const std::vector<std::uint64_t>& values) {
    assert(static_cast<int>(values.size()) == nfree_);
    for (int i = 0; i < nfree_; ++i) slots_[static_cast<std::size_t>(i)] = values[i];
    for (std::size_t i = static_cast<std::size_t>(nfree_); i < slots_.size(); ++i)
      slots_[i] = kUnset;
    return eval(root_);
  }

 private:
  Universe u_;
  Node root_;
  int nfree_ = 0;
  int value_bits_ = 1;
  std::vector<std::uint64_t> slots_;
  std::uint64_t budget_;
  std::uint64_t spent_ = 0;
  std::vector<std::unordered_map<std::uint64_t, bool>> memo64_;
  std::vector<std::map<std::vector<std::uint64_t>, bool>> memo_wide_;

  void tick() {
    ++spent_;
    if (budget_ && spent_ > budget_) throw BudgetExceeded(spent_);
  }

  bool eval(const Node& n) {
    tick();
    switch (n.op) {
      case Node::Op::True:
        return true;
      case Node::Op::False:
        return false;
      case Node::Op::Mem: {
        std::uint64_t a = slots_[static_cast<std::size_t>(n.a)];
        std::uint64_t b = slots_[static_cast<std::size_t>(n.b)];
        return a < 64 && ((b >> a) & 1u);
      }
      case Node::Op::Eq:
        return slots_[static_cast<std::size_t>(n.a)] ==
               slots_[static_cast<std::size_t>(n.b)];
      case Node::Op::Not:
        return !eval(n.kids[0]);
      case Node::Op::And:
        for (const Node& k : n.kids)
          if (!eval(k)) return false;
        return true;
      case Node::Op::Or:
        for (const Node& k : n.kids)
          if (eval(k)) return true;
        return false;
      case Node::Op::Implies:
        return !eval(n.kids[0]) || eval(n.kids[1]);
      case Node::Op::Iff:
        return eval(n.kids[0]) == eval(n.kids[1]);
      case Node::Op::ExtDef: {
        auto [ok, mask] = psi_set(n);
        return ok && mask == slots_[static_cast<std::size_t>(n.a)];
      }
      case Node::Op::Block:
        return eval_block(n);
    }
    return false;
  }

  // The set {u in U : psi(u)} as a code, or ok=false when no universe
  // element has exactly that extension.
  std::pair<bool, std::uint64_t> psi_set(const Node& n) {
    const std::uint64_t size = u_.size();
    switch (n.psi) {
      case Node::Psi::Never:
        return {true, 0};
      case Node::Psi::EqOne: {
        std::uint64_t t = slots_[static_cast<std::size_t>(n.p0)];
        if (t >= 63) return {false, 0};
        std::uint64_t m = std::uint64_t{1} << t;
        return {m < size, m};
      }
      case Node::Psi::Upair: {
        std::uint64_t t = slots_[static_cast<std::size_t>(n.p0)];
        std::uint64_t s = slots_[static_cast<std::size_t>(n.p1)];
        if (t >= 63 || s >= 63) return {false, 0};
        std::uint64_t m = (std::uint64_t{1} << t) | (std::uint64_t{1} << s);
        return {m < size, m};
      }
      case Node::Psi::Sigma: {
        std::uint64_t t = slots_[static_cast<std::size_t>(n.p0)];
        if (t >= 63) return {false, 0};
        std::uint64_t m = t | (std::uint64_t{1} << t);
        return {m < size, m};
      }
      case Node::Psi::Union: {
        std::uint64_t t = slots_[static_cast<std::size_t>(n.p0)];
        std::uint64_t m = 0;
        for (int i = 0; i < 64; ++i)
          if ((t >> i) & 1u) m |= static_cast<std::uint64_t>(i);
        return {m < size, m};
      }
      case Node::Psi::General: {
        std::uint64_t m = 0;
        const std::size_t u_slot = static_cast<std::size_t>(n.b);
        for (std::uint64_t e = 0; e < size; ++e) {
          tick();
          slots_[u_slot] = e;
          bool holds = eval(n.kids[0]);
          slots_[u_slot] = kUnset;
          if (!holds) continue;
          if (e >= 63) return {false, 0};
          m |= std::uint64_t{1} << e;
        }
        return {m < size, m};
      }
    }
    return {false, 0};
  }

  bool ready(const Node& n) const {
    for (int s : n.free)
      if (slots_[static_cast<std::size_t>(s)] == kUnset) return false;
    return true;
  }

  bool eval_block(const Node& n) {
    if (u_.size() == 0) return n.is_forall;

    const bool narrow = static_cast<int>(n.free.size()) * value_bits_ <= 62;
    std::uint64_t key64 = 1;  // sentinel bit separates empty keys from absence
    std::vector<std::uint64_t> key_wide;
    auto& m64 = memo64_[static_cast<std::size_t>(n.block_id)];
    auto& mw = memo_wide_[static_cast<std::size_t>(n.block_id)];
    if (narrow) {
      for (int s : n.free)
        key64 = (key64 << value_bits_) | slots_[static_cast<std::size_t>(s)];
      if (auto it = m64.find(key64); it != m64.end()) return it->second;
    } else {
      for (int s : n.free) key_wide.push_back(slots_[static_cast<std::size_t>(s)]);
      if (auto it = mw.find(key_wide); it != mw.end()) return it->second;
    }

    std::uint64_t pending = (std::uint64_t{1} << n.kids.size()) - 1;
    bool found = search(n, pending);
    bool result = n.is_forall ? !found : found;

    if (narrow) {
      if (m64.size() < (1u << 22)) m64.emplace(key64, result);
    } else {
      if (mw.size() < (1u << 16)) mw.emplace(key_wide, result);
    }
    return result;
  }

  // Search for an assignment of the block's slots satisfying every member.
  // All assignments made here are undone before returning.
  bool search(const Node& blk, std::uint64_t pending) {
    tick();
    std::vector<int> trail;
    auto undo = [&] {
      for (int s : trail) slots_[static_cast<std::size_t>(s)] = kUnset;
    };
    auto assign = [&](int s, std::uint64_t v) {
      slots_[static_cast<std::size_t>(s)] = v;
      trail.push_back(s);
    };
    auto val = [&](int s) { return slots_[static_cast<std::size_t>(s)]; };

    // Propagation: evaluate ready members, assign determined slots.
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < blk.kids.size(); ++i) {
        if (!((pending >> i) & 1u)) continue;
        const Node& m = blk.kids[i];
        if (ready(m)) {
          if (!eval(m)) {
            undo();
            return false;
          }
          pending &= ~(std::uint64_t{1} << i);
          progress = true;
          continue;
        }
        if (m.op == Node::Op::Eq) {
          std::uint64_t va = val(m.a), vb = val(m.b);
          if ((va == kUnset) != (vb == kUnset)) {
            if (va == kUnset)
              assign(m.a, vb);
            else
              assign(m.b, va);
            pending &= ~(std::uint64_t{1} << i);
            progress = true;
          }
          continue;
        }
        if (m.op != Node::Op::ExtDef) continue;

        if (val(m.a) == kUnset) {
          // Forward: once psi's own dependencies are assigned the defined
          // set is computable.  (psi may mention v itself; then this never
          // fires and the member waits for a full evaluation.)
          bool deps_ready = true;
          for (int s : m.kids[0].free)
            if (s != m.b && val(s) == kUnset) deps_ready = false;
          if (!deps_ready) continue;
          auto [ok, mask] = psi_set(m);
          if (!ok || mask >= u_.size()) {
            undo();
            return false;
          }
          assign(m.a, mask);
          pending &= ~(std::uint64_t{1} << i);
          progress = true;
          continue;
        }

        // Reverse: v is known and the definition shape pins psi's
        // parameters (projections out of pairs, predecessors, ...).
        std::uint64_t vv = val(m.a);
        int pc = std::popcount(vv);
        if (m.psi == Node::Psi::EqOne && val(m.p0) == kUnset) {
          if (pc != 1) {
            undo();
            return false;
          }
          assign(m.p0, static_cast<std::uint64_t>(std::countr_zero(vv)));
          progress = true;
        } else if (m.psi == Node::Psi::Upair) {
          std::uint64_t s0 = val(m.p0), s1 = val(m.p1);
          if (s0 != kUnset && s1 != kUnset) continue;  // ready() will catch it
          if (pc == 0 || pc > 2) {
            undo();
            return false;
          }
          if (pc == 1) {
            std::uint64_t bit = static_cast<std::uint64_t>(std::countr_zero(vv));
            if (s0 == kUnset) assign(m.p0, bit);
            if (val(m.p1) == kUnset) assign(m.p1, bit);
            progress = true;
          } else if ((s0 == kUnset) != (s1 == kUnset)) {
            std::uint64_t lo = static_cast<std::uint64_t>(std::countr_zero(vv));
            std::uint64_t hi = static_cast<std::uint64_t>(63 - std::countl_zero(vv));
            std::uint64_t known = s0 == kUnset ? s1 : s0;
            if (known != lo && known != hi) {
              undo();
              return false;
            }
            assign(s0 == kUnset ? m.p0 : m.p1, known == lo ? hi : lo);
            progress = true;
          }
          // both unassigned with two elements: a branch point, handled below
        } else if (m.psi == Node::Psi::Sigma && val(m.p0) == kUnset) {
          // successor is injective: at most one t with t | {t} = v
          std::uint64_t t = kUnset;
          for (int bi = 0; bi < 63; ++bi) {
            if (!((vv >> bi) & 1u)) continue;
            if ((vv & ~(std::uint64_t{1} << bi)) == static_cast<std::uint64_t>(bi)) {
              t = static_cast<std::uint64_t>(bi);
              break;
            }
          }
          if (t == kUnset) {
            undo();
            return false;
          }
          assign(m.p0, t);
          progress = true;
        }
      }
    }

    if (pending == 0) {
      undo();
      return true;
    }

    // Branch on the unassigned slot with the smallest candidate set.
    int slot = -1;
    std::vector<std::uint64_t> domain;
    bool full_domain = true;
    auto bits_of = [](std::uint64_t v) {
      std::vector<std::uint64_t> out;
      for (int bi = 0; bi < 64; ++bi)
        if ((v >> bi) & 1u) out.push_back(static_cast<std::uint64_t>(bi));
      return out;
    };
    for (std::size_t i = 0; i < blk.kids.size(); ++i) {
      if (!((pending >> i) & 1u)) continue;
      const Node& m = blk.kids[i];
      if (m.op == Node::Op::Mem && val(m.a) == kUnset && val(m.b) != kUnset) {
        auto cand = bits_of(val(m.b));
        if (full_domain || cand.size() < domain.size()) {
          slot = m.a;
          domain = std::move(cand);
          full_domain = false;
        }
      } else if (m.op == Node::Op::ExtDef && val(m.a) != kUnset &&
                 m.psi == Node::Psi::Upair && val(m.p0) == kUnset &&
                 val(m.p1) == kUnset) {
        auto cand = bits_of(val(m.a));
        if (full_domain || cand.size() < domain.size()) {
          slot = m.p0;
          domain = std::move(cand);
          full_domain = false;
        }
      }
    }
    if (slot == -1) {
      for (int s : blk.slots)
        if (val(s) == kUnset) {
          slot = s;
          break;
        }
    }
    if (slot == -1) {
      // Unreachable: every member's free slots lie in this block's slots or
      // an enclosing scope already fully assigned.
      undo();
      throw std::logic_error("block search stalled");
    }

    if (full_domain) {
      for (std::uint64_t c = 0; c < u_.size(); ++c) {
        assign(slot, c);
        if (search(blk, pending)) {
          undo();
          return true;
        }
        slots_[static_cast<std::size_t>(slot)] = kUnset;
        trail.pop_back();
      }
    } else {
      for (std::uint64_t c : domain) {
        assign(slot, c);
        if (search(blk, pending)) {
          undo();
          return true;
        }
        slots_[static_cast<std::size_t>(slot)] = kUnset;
        trail.pop_back();
      }
    }
    undo();
    return false;
  }
};

std::vector<Var> sorted_free(const FormulaPtr& f) {
  auto fv = free_vars(f);
  return std::vector<Var>(fv.begin(), fv.end());
}

}  // namespace

// -- public entry points -------------------------------------------------------

bool eval(const FormulaPtr& f, const std::map<Var, HFSet>& env, const Universe& u,
          const EvalOptions& opts) {
  std::vector<Var> order = sorted_free(f);
  std::vector<std::uint64_t> values;
  for (const Var& v : order) {
    auto it = env.find(v);
    if (it == env.end())
      throw std::invalid_argument("unbound free variable '" + v.name + "'");
    if (it->second.code >= u.size())
      throw std::invalid_argument("environment value outside the universe");
    values.push_back(it->second.code);
  }
  Engine e(f, order, u, opts);
  return e.run(values);
}

Verdict check(const Obligation& ob, const Universe& u, const EvalOptions& opts) {
  FormulaPtr body = ob.hyps.empty() ? ob.goal : implies(land_all(ob.hyps), ob.goal);
  std::vector<Var> order = sorted_free(body);
  const Universe outer = opts.closure_universe.value_or(u);
  if (outer.size() > u.size())
    throw std::invalid_argument("closure universe larger than the evaluation universe");

  Verdict v;
  v.valid = true;
  if (!order.empty() && outer.size() == 0) return v;  // no assignments at all

  Engine e(body, order, u, opts);
  std::vector<std::uint64_t> values(order.size(), 0);
  // Odometer over closure assignments, the first variable by name most
  // significant: the first failure is the least counterexample in
  // lexicographic code order.
  while (true) {
    if (!e.run(values)) {
      v.valid = false;
      for (std::size_t i = 0; i < order.size(); ++i)
        v.counterexample[order[i]] = HFSet{values[i]};
      return v;
    }
    if (order.empty()) break;
    int pos = static_cast<int>(values.size()) - 1;
    while (pos >= 0 && ++values[static_cast<std::size_t>(pos)] == outer.size()) {
      values[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return v;
}

std::vector<HFSet> satisfying(const FormulaPtr& f, const Var& var, const Universe& u,
                              const std::map<Var, HFSet>& env, const EvalOptions& opts) {
  auto fv = free_vars(f);
  fv.insert(var);
  std::vector<Var> order(fv.begin(), fv.end());
  std::vector<std::uint64_t> values(order.size(), 0);
  std::size_t var_pos = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == var) {
      var_pos = i;
      continue;
    }
    auto it = env.find(order[i]);
    if (it == env.end())
      throw std::invalid_argument("unbound free variable '" + order[i].name + "'");
    if (it->second.code >= u.size())
      throw std::invalid_argument("environment value outside the universe");
    values[i] = it->second.code;
  }
  Engine e(f, order, u, opts);
  std::vector<HFSet> out;
  for (std::uint64_t c = 0; c < u.size(); ++c) {
    values[var_pos] = c;
    if (e.run(values)) out.push_back(HFSet{c});
  }
  return out;
}

}  // namespace zfcat
