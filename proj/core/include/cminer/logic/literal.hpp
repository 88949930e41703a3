#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace cminer::logic {

/// A concrete request value: the payload of equality, comparison and set
/// atoms, and the unit the probe pipeline plugs into request bodies.
using Literal = std::variant<bool, std::int64_t, double, std::string>;

bool isNumeric(const Literal& v);
double asNumber(const Literal& v);

/// Equality with int/double promotion; cross-kind otherwise false.
bool literalEquals(const Literal& a, const Literal& b);

/// Strict total order used for canonical sorting (kind rank, then value).
bool literalLess(const Literal& a, const Literal& b);

/// DSL rendering: strings quoted and escaped, booleans bare, doubles keep
/// a decimal point so they re-parse as doubles.
std::string printLiteral(const Literal& v);

std::string quoteString(const std::string& s);

}  // namespace cminer::logic
