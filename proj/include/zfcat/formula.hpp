#pragma once
// Kernel first-order language of set theory: variables, membership and
// equality atoms, propositional connectives, quantifiers.  Nothing else.
// Terms never appear here; surface-level pseudo-terms are compiled away
// by elaborate() before anything downstream sees a formula.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace zfcat {

// A variable is just a name.  Ordering and equality are by name.
struct Var {
  std::string name;

  Var() = default;
  explicit Var(std::string n) : name(std::move(n)) {}

  bool operator==(const Var& o) const { return name == o.name; }
  bool operator!=(const Var& o) const { return name != o.name; }
  bool operator<(const Var& o) const { return name < o.name; }
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable, shared AST node.  Build through the free functions below;
// never mutate a node after construction.
class Formula {
public:
  enum class Kind : std::uint8_t {
    True,
    False,
    Mem,      // a in b
    Eq,       // a = b
    Not,      // ~lhs
    And,      // lhs /\ rhs
    Or,       // lhs \/ rhs
    Implies,  // lhs -> rhs
    Iff,      // lhs <-> rhs
    Forall,   // forall a. lhs
    Exists,   // exists a. lhs
  };

  Kind kind;
  Var a, b;             // atom arguments; quantifier variable lives in `a`
  FormulaPtr lhs, rhs;  // children; unary nodes use `lhs` only

  Formula(Kind k, Var va, Var vb, FormulaPtr l, FormulaPtr r)
      : kind(k), a(std::move(va)), b(std::move(vb)), lhs(std::move(l)), rhs(std::move(r)) {}

  bool is_atom() const { return kind == Kind::Mem || kind == Kind::Eq; }
  bool is_quant() const { return kind == Kind::Forall || kind == Kind::Exists; }
};

// -- constructors ------------------------------------------------------

FormulaPtr top();
FormulaPtr bot();
FormulaPtr mem(Var x, Var y);
FormulaPtr eq(Var x, Var y);
FormulaPtr lnot(FormulaPtr f);
FormulaPtr land(FormulaPtr l, FormulaPtr r);
FormulaPtr lor(FormulaPtr l, FormulaPtr r);
FormulaPtr implies(FormulaPtr l, FormulaPtr r);
FormulaPtr iff(FormulaPtr l, FormulaPtr r);
FormulaPtr forall(Var v, FormulaPtr body);
FormulaPtr exists(Var v, FormulaPtr body);

// Right-nested chains over a vector; empty vector yields top() for `and`.
FormulaPtr land_all(const std::vector<FormulaPtr>& fs);
FormulaPtr forall_all(const std::vector<Var>& vs, FormulaPtr body);
FormulaPtr exists_all(const std::vector<Var>& vs, FormulaPtr body);

// -- queries -----------------------------------------------------------

std::set<Var> free_vars(const FormulaPtr& f);
// Every name that occurs anywhere, free or bound.  Used for freshening.
std::set<std::string> all_names(const FormulaPtr& f);

// Deterministic fresh-name generation: `base`, then `base1`, `base2`, ...
// The first candidate not present in `avoid` wins; the chosen name is
// added to `avoid` so successive calls never collide.
Var fresh_var(const std::string& base, std::set<std::string>& avoid);

// Simultaneous capture-avoiding variable-for-variable substitution.
// free_vars(result) is exactly the image of free_vars(f) under `m`
// (variables not in `m` map to themselves).
FormulaPtr substitute(const FormulaPtr& f, const std::map<Var, Var>& m);

// Alpha-equivalence: equal up to consistent renaming of bound variables.
bool alpha_eq(const FormulaPtr& f, const FormulaPtr& g);

// Total order on formulas, invariant under renaming of bound variables;
// free variables compare by name.  Returns <0, 0, >0; 0 iff alpha_eq.
int alpha_compare(const FormulaPtr& f, const FormulaPtr& g);

// Structural equality (names included).
bool struct_eq(const FormulaPtr& f, const FormulaPtr& g);

// ASCII rendering in the surface grammar (kernel formulas are a sublanguage
// of it, so the output re-parses).  Connectives: ~ /\ \/ -> <->, quantifiers
// `forall v.` / `exists v.`, atoms `x in y`, `x = y`.
std::string pretty(const FormulaPtr& f);

// 64-bit FNV-1a over the pretty form; used for content-derived names.
std::uint64_t content_hash(const FormulaPtr& f);

std::size_t node_count(const FormulaPtr& f);

}  // namespace zfcat
