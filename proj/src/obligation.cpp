#include "zfcat/obligation.hpp"

#include <cstdio>

namespace zfcat {

namespace {

std::string hex8(std::uint64_t h) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x",
                static_cast<std::uint32_t>(h ^ (h >> 32)));
  return buf;
}

}  // namespace

Obligation mk_obligation(const std::string& role, std::vector<FormulaPtr> hyps,
                         FormulaPtr goal, const std::string& site,
                         bool needs_infinity) {
  FormulaPtr sequent = hyps.empty() ? goal : implies(land_all(hyps), goal);
  Obligation ob;
  ob.name = role + "_" + hex8(content_hash(sequent));
  ob.hyps = std::move(hyps);
  ob.goal = std::move(goal);
  ob.provenance = site;
  ob.needs_infinity = needs_infinity;
  return ob;
}

}  // namespace zfcat
