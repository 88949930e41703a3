#pragma once

#include <map>
#include <string>
#include <vector>

#include "cminer/logic/literal.hpp"

namespace cminer::analysis {

/// What the interpreter knows about an expression's value. Collections only
/// ever hold primitive/enum literals; anything else degrades to Unknown.
struct AbstractValue {
  enum class Kind { Unknown, IntConst, StrConst, BoolConst, EnumConst, ParamRef, Collection };

  Kind kind = Kind::Unknown;
  std::int64_t intValue = 0;
  bool boolValue = false;
  std::string text;  // string const / enum constant / parameter path
  std::vector<logic::Literal> elements;

  bool operator==(const AbstractValue&) const = default;

  static AbstractValue unknown() { return {}; }
  static AbstractValue intConst(std::int64_t v) {
    AbstractValue a;
    a.kind = Kind::IntConst;
    a.intValue = v;
    return a;
  }
  static AbstractValue strConst(std::string v) {
    AbstractValue a;
    a.kind = Kind::StrConst;
    a.text = std::move(v);
    return a;
  }
  static AbstractValue boolConst(bool v) {
    AbstractValue a;
    a.kind = Kind::BoolConst;
    a.boolValue = v;
    return a;
  }
  static AbstractValue enumConst(std::string constant) {
    AbstractValue a;
    a.kind = Kind::EnumConst;
    a.text = std::move(constant);
    return a;
  }
  static AbstractValue paramRef(std::string path) {
    AbstractValue a;
    a.kind = Kind::ParamRef;
    a.text = std::move(path);
    return a;
  }
  static AbstractValue collection(std::vector<logic::Literal> elems) {
    AbstractValue a;
    a.kind = Kind::Collection;
    a.elements = std::move(elems);
    return a;
  }

  bool isParam() const { return kind == Kind::ParamRef; }
  bool isUnknown() const { return kind == Kind::Unknown; }
};

/// Lexically scoped variable environment plus the recency list of accessed
/// parameter references (used to disambiguate duplicated field names).
class VariableStack {
 public:
  VariableStack() { scopes_.emplace_back(); }

  void pushScope() { scopes_.emplace_back(); }
  void popScope();
  size_t scopeDepth() const { return scopes_.size(); }

  void declare(const std::string& name, AbstractValue v);
  /// Updates the innermost binding; declares in the current scope when new.
  void assign(const std::string& name, AbstractValue v);
  const AbstractValue* lookup(const std::string& name) const;

  void noteParamAccess(const std::string& path);
  const std::vector<std::string>& recency() const { return recency_; }
  void appendRecency(const std::vector<std::string>& paths, size_t from);

  /// Visible bindings, innermost scope winning. Used for branch joins.
  std::map<std::string, AbstractValue> flatten() const;

  bool operator==(const VariableStack&) const = default;

 private:
  std::vector<std::map<std::string, AbstractValue>> scopes_;
  std::vector<std::string> recency_;  // most recent last
};

}  // namespace cminer::analysis
