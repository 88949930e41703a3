#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cminer/logic/constraint.hpp"

namespace cminer::logic {

struct Absent {
  bool operator==(const Absent&) const = default;
};

/// Stand-in for object/array values in a request body; value atoms over it
/// are false, Len sees the array size.
struct Composite {
  enum class Kind { Object, Array };
  Kind kind = Kind::Object;
  std::optional<std::int64_t> size;
  bool operator==(const Composite&) const = default;
};

using AssignedValue = std::variant<Absent, Literal, Composite>;

bool isAbsent(const AssignedValue& v);

/// One grounding point: a value (or absence) per parameter path, plus
/// explicit booleans for any Unparsed atoms being evaluated.
struct Assignment {
  std::map<std::string, AssignedValue> values;
  std::map<std::string, bool> unparsedFlags;
};

struct MissingAssignmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PartialConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainCoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Standard boolean semantics with the absent-falsity rule: value atoms over
/// an absent parameter are false, present(p) is true iff p is assigned.
bool evaluateUnder(const Formula& f, const Assignment& a);

/// Finite grounding for equivalence checking: per path, absent plus a value
/// set rich enough to distinguish every atom of the formulas it was built
/// for (bound-adjacent samples for Cmp, length samples for Len, the literal
/// members plus a default for Eq/InSet, both booleans for boolean Eq).
class Domain {
 public:
  void ensurePath(const std::string& path);
  void addValue(const std::string& path, const Literal& v);
  void addFormula(const Formula& f);

  static Domain forConstraints(std::span<const Constraint> cs);
  static Domain forFormulas(std::span<const Formula> fs);

  bool covers(const Formula& f) const;
  std::uint64_t assignmentCount() const;
  const std::map<std::string, std::vector<AssignedValue>>& states() const {
    return states_;
  }

  /// Enumerates the full product domain. Stops early if fn returns false.
  void eachAssignment(const std::function<bool(const Assignment&)>& fn) const;

 private:
  // states_[path][0] is always Absent.
  std::map<std::string, std::vector<AssignedValue>> states_;
};

/// True iff the two preconditions evaluate identically over every assignment
/// of the product domain. Rejects partial constraints.
bool equivalent(const Constraint& a, const Constraint& b, const Domain& d);

}  // namespace cminer::logic
