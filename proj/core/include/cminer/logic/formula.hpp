#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cminer/logic/atom.hpp"

namespace cminer::logic {

/// Immutable boolean formula over parameter atoms: the precondition side of
/// every constraint, whichever pipeline produced it.
class Formula {
 public:
  enum class Kind { Leaf, Not, And, Or };

  Formula() : kind_(Kind::Leaf), atom_(PresentAtom{""}) {}

  static Formula leaf(Atom a);
  static Formula negation(Formula f);
  /// Collapses to the single child when given exactly one.
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);

  Kind kind() const { return kind_; }
  const Atom& atom() const { return *atom_; }
  const std::vector<Formula>& children() const { return children_; }
  const Formula& child() const { return children_.front(); }
  std::vector<Formula> intoChildren() && { return std::move(children_); }

  bool containsUnparsed() const;
  void eachAtom(const std::function<void(const Atom&)>& fn) const;
  std::set<std::string> referencedPaths() const;

  bool operator==(const Formula&) const = default;

 private:
  Kind kind_;
  std::optional<Atom> atom_;
  std::vector<Formula> children_;
};

/// Canonical form: nested And/Or flattened, duplicate children removed,
/// children sorted by their functional rendering, double negation gone,
/// single-child connectives collapsed. Idempotent.
Formula normalize(const Formula& f);

/// DSL infix rendering (`not present(a) and not present(b)`).
std::string printFormula(const Formula& f);

/// Functional rendering (`and(not(Unparsed("...")), present(card.issuer))`);
/// doubles as the canonical sort key.
std::string functionalForm(const Formula& f);

}  // namespace cminer::logic
