#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cminer::lang {

/// Source range of a node: 1-based line/column plus byte offsets into the
/// unit text (the analyzer slices unparsed guard fragments from these).
struct Span {
  int line = 1;
  int col = 1;
  size_t begin = 0;
  size_t end = 0;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ")"),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct UnsupportedConstructError : ParseError {
  UnsupportedConstructError(const std::string& construct, int line, int col)
      : ParseError("unsupported construct: " + construct, line, col) {}
};

enum class BinOp { Add, Sub, Mul, Div, And, Or, Eq, Ne, Lt, Le, Gt, Ge };

std::string_view binOpText(BinOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind {
    IntLit,     // intValue
    StringLit,  // text (unescaped)
    BoolLit,    // intValue != 0
    NullLit,
    Var,          // text
    FieldAccess,  // target.text
    MethodCall,   // target.text(args); target null for bare calls
    New,          // new text(args)
    Binary,       // lhs op rhs
    Not,          // target
  };

  Kind kind;
  Span span;
  std::string text;
  std::int64_t intValue = 0;
  BinOp op = BinOp::Add;
  ExprPtr target;
  ExprPtr lhs;
  ExprPtr rhs;
  std::vector<ExprPtr> args;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct SwitchCase {
  bool isDefault = false;
  std::string label;  // literal text or enum constant name
  Span span;
  std::vector<StmtPtr> body;
};

struct Stmt {
  enum class Kind {
    Block,      // body
    LocalDecl,  // typeName name [= expr]
    Assign,     // name = expr
    If,         // expr, thenStmt, elseStmt?
    Switch,     // expr, cases
    For,        // forInit?, expr (cond)?, forUpdate?, loopBody
    ForEach,    // typeName? name : expr, loopBody
    Return,     // expr?
    Throw,      // expr
    ExprStmt,   // expr
    Break,
  };

  Kind kind;
  Span span;
  std::string typeName;
  std::string name;
  ExprPtr expr;
  std::vector<StmtPtr> body;
  StmtPtr thenStmt;
  StmtPtr elseStmt;
  StmtPtr forInit;
  StmtPtr forUpdate;
  StmtPtr loopBody;
  std::vector<SwitchCase> cases;
};

struct Param {
  std::string type;
  std::string name;
};

struct MethodDecl {
  std::string returnType;  // "void", "boolean", "int", class name, ...
  std::string name;
  std::vector<Param> params;
  StmtPtr body;
  Span span;

  bool returnsBoolean() const { return returnType == "boolean"; }
};

struct FieldDecl {
  std::string type;
  std::string name;
  Span span;
};

struct ClassDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  Span span;
};

struct EnumDecl {
  std::string name;
  std::vector<std::string> constants;
  Span span;
};

/// One parsed `.mj` compilation unit; keeps the original text so analysis
/// can quote source fragments verbatim.
struct Unit {
  std::string fileName;
  std::string source;
  std::vector<ClassDecl> classes;
  std::vector<EnumDecl> enums;
};

Unit parseUnit(std::string source, std::string fileName = "<memory>");

/// Canonical source rendering; parse(printUnit(u)) == u structurally.
std::string printUnit(const Unit& u);
std::string printExpr(const Expr& e);

}  // namespace cminer::lang
