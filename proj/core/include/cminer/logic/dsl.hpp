#pragma once

#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cminer/logic/constraint.hpp"

namespace cminer::logic {

struct DslError : std::runtime_error {
  DslError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ")"),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// Parses a constraint DSL document (one statement per line, `#` comments).
/// Sugar statements (`requires`, `exactly-one`, `all-or-none`) are expanded
/// to the InvalidState form. When a path catalog is given, atoms referencing
/// unknown parameters are rejected.
std::vector<Constraint> parseDsl(std::string_view text,
                                 const std::set<std::string>* pathCatalog = nullptr,
                                 Origin origin = Origin::GroundTruth,
                                 std::string_view sourceName = "dsl");

/// One DSL line (without trailing newline), labels included.
std::string printConstraint(const Constraint& c);

/// Whole document, one statement per line.
std::string printConstraints(std::span<const Constraint> cs);

}  // namespace cminer::logic
