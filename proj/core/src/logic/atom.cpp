#include "cminer/logic/atom.hpp"

#include <sstream>

namespace cminer::logic {

std::string_view cmpOpText(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

bool applyCmp(CmpOp op, double lhs, double rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
  }
  return false;
}

bool isUnparsed(const Atom& a) { return std::holds_alternative<UnparsedAtom>(a); }

std::vector<std::string> atomPaths(const Atom& a) {
  struct Visitor {
    std::vector<std::string> operator()(const PresentAtom& x) const { return {x.path}; }
    std::vector<std::string> operator()(const EqAtom& x) const { return {x.path}; }
    std::vector<std::string> operator()(const CmpAtom& x) const { return {x.path}; }
    std::vector<std::string> operator()(const CmpParamsAtom& x) const {
      return {x.lhsPath, x.rhsPath};
    }
    std::vector<std::string> operator()(const LenAtom& x) const { return {x.path}; }
    std::vector<std::string> operator()(const InSetAtom& x) const { return {x.path}; }
    std::vector<std::string> operator()(const UnparsedAtom&) const { return {}; }
  };
  return std::visit(Visitor{}, a);
}

std::string printAtom(const Atom& a) {
  struct Visitor {
    std::string operator()(const PresentAtom& x) const { return "present(" + x.path + ")"; }
    std::string operator()(const EqAtom& x) const {
      return x.path + " == " + printLiteral(x.value);
    }
    std::string operator()(const CmpAtom& x) const {
      return x.path + " " + std::string(cmpOpText(x.op)) + " " + printLiteral(x.bound);
    }
    std::string operator()(const CmpParamsAtom& x) const {
      return x.lhsPath + " " + std::string(cmpOpText(x.op)) + " " + x.rhsPath;
    }
    std::string operator()(const LenAtom& x) const {
      return "len(" + x.path + ") " + std::string(cmpOpText(x.op)) + " " +
             std::to_string(x.bound);
    }
    std::string operator()(const InSetAtom& x) const {
      std::string out = x.path + " in {";
      for (size_t i = 0; i < x.values.size(); ++i) {
        if (i) out += ", ";
        out += printLiteral(x.values[i]);
      }
      return out + "}";
    }
    std::string operator()(const UnparsedAtom& x) const {
      return "unparsed(" + quoteString(x.text) + ")";
    }
  };
  return std::visit(Visitor{}, a);
}

std::string functionalAtom(const Atom& a) {
  struct Visitor {
    std::string operator()(const PresentAtom& x) const { return "present(" + x.path + ")"; }
    std::string operator()(const EqAtom& x) const {
      return "eq(" + x.path + ", " + printLiteral(x.value) + ")";
    }
    std::string operator()(const CmpAtom& x) const {
      return "cmp(" + x.path + ", " + std::string(cmpOpText(x.op)) + ", " +
             printLiteral(x.bound) + ")";
    }
    std::string operator()(const CmpParamsAtom& x) const {
      return "cmp(" + x.lhsPath + ", " + std::string(cmpOpText(x.op)) + ", " + x.rhsPath + ")";
    }
    std::string operator()(const LenAtom& x) const {
      return "len(" + x.path + ", " + std::string(cmpOpText(x.op)) + ", " +
             std::to_string(x.bound) + ")";
    }
    std::string operator()(const InSetAtom& x) const {
      std::string out = "in(" + x.path + ", {";
      for (size_t i = 0; i < x.values.size(); ++i) {
        if (i) out += ", ";
        out += printLiteral(x.values[i]);
      }
      return out + "})";
    }
    std::string operator()(const UnparsedAtom& x) const {
      return "Unparsed(" + quoteString(x.text) + ")";
    }
  };
  return std::visit(Visitor{}, a);
}

}  // namespace cminer::logic
