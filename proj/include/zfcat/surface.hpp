#pragma once
// Surface language: the kernel plus set-theoretic shorthand.  Pseudo-terms
// (0, 1, sigma, ordered/unordered pairs, singletons, unions, class braces)
// and derived predicates (sub, Fun, ON, Nat, dom/ran forms) are notation
// only; elaborate() compiles them down to kernel formulas.

#include <map>
#include <memory>
#include <set>
#include <string>

#include "zfcat/formula.hpp"

namespace zfcat {

struct Term;
struct SFormula;
using TermPtr = std::shared_ptr<const Term>;
using SFormulaPtr = std::shared_ptr<const SFormula>;

struct Term {
  enum class Kind : std::uint8_t {
    Var,
    Zero,   // empty set
    One,    // sigma(0)
    Sigma,  // t0 union {t0}
    Pair,   // Kuratowski <t0, t1>
    Sing,   // {t0}
    Upair,  // {t0, t1}
    Union,  // Un(t0)
    Class,  // {binder | body}
  };

  Kind kind;
  Var v;        // Var
  TermPtr t0, t1;
  Var binder;   // Class
  SFormulaPtr body;
};

struct SFormula {
  enum class Kind : std::uint8_t {
    True,
    False,
    Mem,     // t0 in t1
    Eq,      // t0 = t1
    Sub,     // t0 sub t1
    Fun,     // t0 is a function (set of pairs, single-valued)
    ON,      // t0 is an ordinal
    Nat,     // t0 is a finite ordinal
    InDom,   // t0 in dom(t1)
    InRan,   // t0 in ran(t1)
    DomEq,   // dom(t0) = t1
    RanSub,  // ran(t0) sub t1
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
  };

  Kind kind;
  TermPtr t0, t1;
  Var v;  // quantifier variable
  SFormulaPtr l, r;
};

// Term and formula builders.  Short names because construction code in the
// category modules chains them heavily.
namespace sf {

TermPtr tvar(Var v);
TermPtr tvar(const std::string& name);
TermPtr zero();
TermPtr one();
TermPtr sigma(TermPtr t);
TermPtr pair(TermPtr a, TermPtr b);
TermPtr sing(TermPtr t);
TermPtr upair(TermPtr a, TermPtr b);
TermPtr un(TermPtr t);
TermPtr cls(Var binder, SFormulaPtr body);

SFormulaPtr top();
SFormulaPtr bot();
SFormulaPtr mem(TermPtr a, TermPtr b);
SFormulaPtr eq(TermPtr a, TermPtr b);
SFormulaPtr sub(TermPtr a, TermPtr b);
SFormulaPtr fun(TermPtr f);
SFormulaPtr on(TermPtr t);
SFormulaPtr nat(TermPtr t);
SFormulaPtr indom(TermPtr e, TermPtr f);
SFormulaPtr inran(TermPtr e, TermPtr f);
SFormulaPtr domeq(TermPtr f, TermPtr e);
SFormulaPtr ransub(TermPtr f, TermPtr e);
SFormulaPtr lnot(SFormulaPtr f);
SFormulaPtr land(SFormulaPtr a, SFormulaPtr b);
SFormulaPtr lor(SFormulaPtr a, SFormulaPtr b);
SFormulaPtr implies(SFormulaPtr a, SFormulaPtr b);
SFormulaPtr iff(SFormulaPtr a, SFormulaPtr b);
SFormulaPtr forall(Var v, SFormulaPtr body);
SFormulaPtr exists(Var v, SFormulaPtr body);

// Kernel formulas embed into the surface language verbatim.
SFormulaPtr from_kernel(const FormulaPtr& f);

}  // namespace sf

std::set<Var> free_vars(const SFormulaPtr& f);
std::set<std::string> all_names(const SFormulaPtr& f);

// Capture-avoiding substitution of terms for free variables.  Quantifier
// and class binders are renamed when a replacement would be captured.
SFormulaPtr substitute(const SFormulaPtr& f, const std::map<Var, TermPtr>& m);

std::string pretty(const TermPtr& t);
std::string pretty(const SFormulaPtr& f);

bool struct_eq(const TermPtr& a, const TermPtr& b);
bool struct_eq(const SFormulaPtr& a, const SFormulaPtr& b);

}  // namespace zfcat
