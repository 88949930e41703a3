#include "cminer/logic/constraint.hpp"

namespace cminer::logic {

std::string_view originText(Origin o) {
  switch (o) {
    case Origin::Doc: return "doc";
    case Origin::Code: return "code";
    case Origin::GroundTruth: return "ground-truth";
  }
  return "?";
}

ConstraintClass classify(const Constraint& c) {
  if (c.klass != ConstraintClass::Unspecified) return c.klass;
  const auto paths = c.precondition.referencedPaths();
  return paths.size() >= 2 ? ConstraintClass::Inter : ConstraintClass::Single;
}

namespace {

bool isNotPresent(const Formula& f) {
  return f.kind() == Formula::Kind::Not &&
         f.child().kind() == Formula::Kind::Leaf &&
         std::holds_alternative<PresentAtom>(f.child().atom());
}

// An Or whose children are all `not present(x)`: the consequent-conjunction
// shape ("B and C are both required once P holds").
bool isConsequentDisjunct(const Formula& f) {
  if (f.kind() != Formula::Kind::Or) return false;
  for (const Formula& c : f.children())
    if (!isNotPresent(c)) return false;
  return true;
}

}  // namespace

std::vector<Constraint> decompose(const Constraint& c) {
  const Formula& pre = c.precondition;
  if (pre.kind() != Formula::Kind::And) return {c};

  std::vector<const Formula*> consequents;
  std::vector<Formula> trigger;
  for (const Formula& child : pre.children()) {
    if (isConsequentDisjunct(child)) {
      consequents.push_back(&child);
    } else {
      trigger.push_back(child);
    }
  }
  // Split only the unambiguous single-consequent shape.
  if (consequents.size() != 1 || trigger.empty()) return {c};

  std::vector<Constraint> out;
  for (const Formula& missing : consequents.front()->children()) {
    std::vector<Formula> parts = trigger;
    parts.push_back(missing);
    Constraint part = c;
    part.precondition = normalize(Formula::conjunction(std::move(parts)));
    out.push_back(std::move(part));
  }
  return out;
}

}  // namespace cminer::logic
