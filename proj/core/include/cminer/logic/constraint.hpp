#pragma once

#include <string>
#include <vector>

#include "cminer/logic/formula.hpp"

namespace cminer::logic {

enum class Origin { Doc, Code, GroundTruth };

std::string_view originText(Origin o);

enum class ConstraintClass { Unspecified, Inter, Single };

/// precondition -> InvalidState. Every constraint in the system, whichever
/// pipeline produced it, is stored in this one shape; `requires` and friends
/// are DSL sugar only.
struct Constraint {
  Formula precondition;
  Origin origin = Origin::GroundTruth;
  std::string sourceRef;
  ConstraintClass klass = ConstraintClass::Unspecified;
  std::string category;  // optional @cat label (A1..B8)

  /// True when the precondition carries an Unparsed atom; such constraints
  /// are kept for manual review and excluded from automatic equivalence.
  bool partial() const { return precondition.containsUnparsed(); }

  Constraint normalized() const {
    Constraint c = *this;
    c.precondition = normalize(c.precondition);
    return c;
  }
};

/// Classify by the number of distinct referenced parameters. Explicit
/// @class labels on ground-truth constraints take precedence.
ConstraintClass classify(const Constraint& c);

/// Splits "P -> B & C" (precondition And(P..., Or(not present(B), not
/// present(C)))) into {P -> B, P -> C}. Splitting happens only at the
/// consequent level; an Or inside the triggering condition is left alone.
std::vector<Constraint> decompose(const Constraint& c);

}  // namespace cminer::logic
