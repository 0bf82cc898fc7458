#include "zfcat/axioms.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "zfcat/elaborate.hpp"
#include "zfcat/parser.hpp"

namespace zfcat {

namespace {

FormulaPtr closed(const std::string& text) {
  FormulaPtr f = elaborate(parse(text));
  if (!free_vars(f).empty()) throw std::logic_error("axiom text is not closed");
  return f;
}

void validate_payload(const SFormulaPtr& payload, const std::vector<Var>& params,
                      const std::vector<Var>& distinguished) {
  std::set<Var> allowed(params.begin(), params.end());
  for (const Var& v : distinguished) {
    if (allowed.count(v))
      throw std::invalid_argument("schema parameter '" + v.name +
                                  "' collides with a distinguished variable");
    allowed.insert(v);
  }
  if (allowed.size() != params.size() + distinguished.size())
    throw std::invalid_argument("schema parameters must be distinct");
  for (const Var& v : free_vars(payload))
    if (!allowed.count(v))
      throw std::invalid_argument("payload has a free variable outside the declared "
                                  "parameters: '" +
                                  v.name + "'");
}

// Names already in play anywhere in the payload or the declarations; the
// schema's own bound variables are chosen outside this set.
std::set<std::string> names_in_use(const SFormulaPtr& payload,
                                   const std::vector<Var>& params,
                                   const std::vector<Var>& distinguished) {
  std::set<std::string> taken = all_names(payload);
  for (const Var& v : params) taken.insert(v.name);
  for (const Var& v : distinguished) taken.insert(v.name);
  return taken;
}

FormulaPtr finish_schema(SFormulaPtr assembled) {
  FormulaPtr f = elaborate(assembled);
  if (!free_vars(f).empty())
    throw std::logic_error("schema instance did not close under its quantifiers");
  return f;
}

}  // namespace

FormulaPtr axiom(Axiom a) {
  switch (a) {
    case Axiom::Extensionality:
      return closed("forall x. forall y. ((forall t. (t in x <-> t in y)) -> x = y)");
    case Axiom::Pairing:
      return closed("forall x. forall y. exists z. forall t. (t in z <-> (t = x \\/ t = y))");
    case Axiom::Union:
      return closed("forall x. exists z. forall t. (t in z <-> exists y. (t in y /\\ y in x))");
    case Axiom::Powerset:
      return closed("forall y. exists z. forall x. (x in z <-> x sub y)");
    case Axiom::Infinity:
      return closed("exists x. (0 in x /\\ forall t. (t in x -> sigma(t) in x))");
    case Axiom::Foundation:
      return closed(
          "forall x. (~(x = 0) -> exists z. (z in x /\\ forall t. (t in x -> ~(t in z))))");
  }
  throw std::logic_error("axiom: unhandled id");
}

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Extensionality:
      return "extensionality";
    case Axiom::Pairing:
      return "pairing";
    case Axiom::Union:
      return "union";
    case Axiom::Powerset:
      return "powerset";
    case Axiom::Infinity:
      return "infinity";
    case Axiom::Foundation:
      return "foundation";
  }
  throw std::logic_error("axiom_name: unhandled id");
}

std::optional<Axiom> axiom_by_name(const std::string& name) {
  static const Axiom all[] = {Axiom::Extensionality, Axiom::Pairing, Axiom::Union,
                              Axiom::Powerset,       Axiom::Infinity, Axiom::Foundation};
  for (Axiom a : all)
    if (axiom_name(a) == name) return a;
  return std::nullopt;
}

FormulaPtr separation(const SFormulaPtr& pred, const std::vector<Var>& params,
                      const Var& subject) {
  validate_payload(pred, params, {subject});
  std::set<std::string> taken = names_in_use(pred, params, {subject});
  Var x = fresh_var("x", taken);
  Var y = fresh_var("y", taken);

  SFormulaPtr body = sf::forall(
      subject, sf::iff(sf::mem(sf::tvar(subject), sf::tvar(y)),
                       sf::land(sf::mem(sf::tvar(subject), sf::tvar(x)), pred)));
  SFormulaPtr assembled = sf::forall(x, sf::exists(y, body));
  for (auto it = params.rbegin(); it != params.rend(); ++it)
    assembled = sf::forall(*it, assembled);
  return finish_schema(assembled);
}

FormulaPtr replacement(const SFormulaPtr& rel, const std::vector<Var>& params,
                       const Var& x, const Var& y) {
  validate_payload(rel, params, {x, y});
  std::set<std::string> taken = names_in_use(rel, params, {x, y});
  Var z = fresh_var("z", taken);
  Var zp = fresh_var("z", taken);
  Var y2 = fresh_var(y.name, taken);

  // exists y. (rel /\ forall y2. (rel[y2/y] -> y2 = y))
  SFormulaPtr unique_image = sf::exists(
      y, sf::land(rel, sf::forall(y2, sf::implies(
                                          substitute(rel, {{y, sf::tvar(y2)}}),
                                          sf::eq(sf::tvar(y2), sf::tvar(y))))));
  SFormulaPtr functional =
      sf::forall(x, sf::implies(sf::mem(sf::tvar(x), sf::tvar(z)), unique_image));
  SFormulaPtr image_bound = sf::forall(
      x, sf::implies(sf::mem(sf::tvar(x), sf::tvar(z)),
                     sf::exists(y, sf::land(sf::mem(sf::tvar(y), sf::tvar(zp)), rel))));
  SFormulaPtr assembled =
      sf::forall(z, sf::implies(functional, sf::exists(zp, image_bound)));
  for (auto it = params.rbegin(); it != params.rend(); ++it)
    assembled = sf::forall(*it, assembled);
  return finish_schema(assembled);
}

}  // namespace zfcat
