#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cminer/logic/literal.hpp"

namespace cminer::logic {

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

std::string_view cmpOpText(CmpOp op);
bool applyCmp(CmpOp op, double lhs, double rhs);

/// present(p): the parameter carries a value in the request.
struct PresentAtom {
  std::string path;
  bool operator==(const PresentAtom&) const = default;
};

/// p == "lit" for string/boolean literals. Numeric equality is a CmpAtom.
struct EqAtom {
  std::string path;
  Literal value;
  bool operator==(const EqAtom&) const = default;
};

/// p <op> number.
struct CmpAtom {
  std::string path;
  CmpOp op = CmpOp::Eq;
  Literal bound;  // int64 or double, always finite
  bool operator==(const CmpAtom&) const = default;
};

/// p <op> q between two parameters.
struct CmpParamsAtom {
  std::string lhsPath;
  CmpOp op = CmpOp::Eq;
  std::string rhsPath;
  bool operator==(const CmpParamsAtom&) const = default;
};

/// len(p) <op> n over string length or array size; n >= 0.
struct LenAtom {
  std::string path;
  CmpOp op = CmpOp::Eq;
  std::int64_t bound = 0;
  bool operator==(const LenAtom&) const = default;
};

/// p in {"a", "b"}.
struct InSetAtom {
  std::string path;
  std::vector<Literal> values;
  bool operator==(const InSetAtom&) const = default;
};

/// A guard fragment the analyzer could not translate, kept verbatim.
struct UnparsedAtom {
  std::string text;
  bool operator==(const UnparsedAtom&) const = default;
};

using Atom = std::variant<PresentAtom, EqAtom, CmpAtom, CmpParamsAtom, LenAtom,
                          InSetAtom, UnparsedAtom>;

bool isUnparsed(const Atom& a);

/// Parameter paths the atom references (0 for Unparsed, 2 for CmpParams).
std::vector<std::string> atomPaths(const Atom& a);

/// DSL rendering, e.g. `present(card)` or `offset > 80`.
std::string printAtom(const Atom& a);

/// Functional rendering used for canonical ordering and debug output,
/// e.g. `cmp(offset, >, 80)` or `Unparsed("isValidCard(card)")`.
std::string functionalAtom(const Atom& a);

}  // namespace cminer::logic
