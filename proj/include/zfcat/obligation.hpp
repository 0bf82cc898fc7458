#pragma once
// A recorded provability claim: hypotheses |- goal, with free variables
// understood as universally closed.  Constructions emit these; the HF
// engine searches them for counterexamples and the exporter renders them
// as FOF conjectures.  Obligations whose goal genuinely needs an infinite
// set (and is therefore expected to fail in every finite universe) carry
// needs_infinity so reporting can separate them from honest failures.

#include <string>
#include <vector>

#include "zfcat/formula.hpp"

namespace zfcat {

struct Obligation {
  std::string name;
  std::vector<FormulaPtr> hyps;
  FormulaPtr goal;
  std::string provenance;  // construction site that emitted it
  bool needs_infinity = false;
};

// Builds an obligation named role + "_" + an eight-digit hash of the sequent
// (hypotheses folded into one implication).  Regenerating the same claim
// regenerates the same name, so names are stable across runs and safe to
// produce concurrently.
Obligation mk_obligation(const std::string& role, std::vector<FormulaPtr> hyps,
                         FormulaPtr goal, const std::string& site,
                         bool needs_infinity = false);

}  // namespace zfcat
