#pragma once
// Hereditarily finite set semantics: the desk-scale verification engine.
//
// Sets are Ackermann-coded: the set with code n has as elements exactly the
// sets whose codes are the set bit positions of n.  Under this coding the
// cumulative ranks are code-contiguous: V_1 = {0}, V_2 = {0,1}, V_3 = codes
// 0..3, V_4 = codes 0..15, V_5 = codes 0..65535, so a universe is just a
// count and quantifiers range over 0..size-1.
//
// eval() is Tarskian evaluation of a kernel formula with every quantifier
// ranging over the universe.  check() evaluates the universal closure of
// (hyps -> goal) and reports the least falsifying assignment in code order
// (variables ordered by name), or Valid if none exists.  `Valid` means "no
// counterexample in this finite structure", never provability.
//
// The evaluator compiles the formula once (quantifier blocks merged through
// conjunctions, membership/equation/extension patterns recognized for
// witness propagation) and memoizes quantifier blocks on their free slots,
// which is what makes exhaustive V_5 searches affordable.  An optional node
// budget guards runaway searches; exceeding it throws BudgetExceeded.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zfcat/formula.hpp"

namespace zfcat {

struct HFSet {
  std::uint64_t code = 0;

  bool contains(const HFSet& e) const {
    return e.code < 64 && (code >> e.code) & 1u;
  }
  std::vector<HFSet> elements() const;
  int rank() const;  // rank(empty set) = 0

  auto operator<=>(const HFSet&) const = default;
};

// Nested-brace rendering, elements in code order: "{{},{{}}}".
std::string to_string(const HFSet& s);

class Universe {
 public:
  enum class Kind { Rank, CodePrefix };

  // V_n for n <= 5; larger ranks do not fit the 64-bit element coding.
  static Universe rank(int n);
  // Codes 0..n-1; n is capped so every element's elements stay in range.
  static Universe code_prefix(std::uint64_t n);

  Kind kind() const { return kind_; }
  std::uint64_t size() const { return size_; }
  HFSet element(std::uint64_t i) const { return HFSet{i}; }
  // "V4" or "prefix:100"
  std::string name() const;

 private:
  Universe(Kind k, std::uint64_t s) : kind_(k), size_(s) {}
  Kind kind_;
  std::uint64_t size_;
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(std::uint64_t spent)
      : std::runtime_error("evaluation node budget exceeded"), nodes(spent) {}
  std::uint64_t nodes;
};

struct EvalOptions {
  std::uint64_t budget = 0;  // 0 = unlimited
  // When set, check() ranges its closure variables over this (smaller)
  // universe while inner quantifiers still range over the full one.
  std::optional<Universe> closure_universe;
};

bool eval(const FormulaPtr& f, const std::map<Var, HFSet>& env, const Universe& u,
          const EvalOptions& opts = {});

struct Verdict {
  bool valid = false;
  std::map<Var, HFSet> counterexample;  // populated iff !valid

  explicit operator bool() const { return valid; }
};

struct Obligation;

Verdict check(const Obligation& ob, const Universe& u, const EvalOptions& opts = {});

// All universe elements e for which f holds with var bound to e, in code
// order.  f may mention other variables only if bound in env.
std::vector<HFSet> satisfying(const FormulaPtr& f, const Var& var, const Universe& u,
                              const std::map<Var, HFSet>& env = {},
                              const EvalOptions& opts = {});

}  // namespace zfcat
