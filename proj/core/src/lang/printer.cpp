#include <sstream>

#include "cminer/lang/ast.hpp"

namespace cminer::lang {

namespace {

int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::Binary) {
    switch (e.op) {
      case BinOp::Or: return 1;
      case BinOp::And: return 2;
      case BinOp::Eq:
      case BinOp::Ne: return 3;
      case BinOp::Lt:
      case BinOp::Le:
      case BinOp::Gt:
      case BinOp::Ge: return 4;
      case BinOp::Add:
      case BinOp::Sub: return 5;
      case BinOp::Mul:
      case BinOp::Div: return 6;
    }
  }
  if (e.kind == Expr::Kind::Not) return 7;
  return 8;
}

std::string escapeString(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string printExprPrec(const Expr& e, int parentPrec);

std::string wrap(const Expr& e, int parentPrec) {
  std::string s = printExprPrec(e, parentPrec);
  if (precedence(e) < parentPrec) return "(" + s + ")";
  return s;
}

std::string printArgs(const std::vector<ExprPtr>& args) {
  std::string out = "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += printExprPrec(*args[i], 0);
  }
  return out + ")";
}

std::string printExprPrec(const Expr& e, int parentPrec) {
  (void)parentPrec;
  switch (e.kind) {
    case Expr::Kind::IntLit: return std::to_string(e.intValue);
    case Expr::Kind::StringLit: return "\"" + escapeString(e.text) + "\"";
    case Expr::Kind::BoolLit: return e.intValue ? "true" : "false";
    case Expr::Kind::NullLit: return "null";
    case Expr::Kind::Var: return e.text;
    case Expr::Kind::FieldAccess:
      return wrap(*e.target, 8) + "." + e.text;
    case Expr::Kind::MethodCall:
      if (e.target) return wrap(*e.target, 8) + "." + e.text + printArgs(e.args);
      return e.text + printArgs(e.args);
    case Expr::Kind::New:
      return "new " + e.text + printArgs(e.args);
    case Expr::Kind::Not:
      return "!" + wrap(*e.target, 7);
    case Expr::Kind::Binary: {
      const int p = precedence(e);
      std::string lhs = printExprPrec(*e.lhs, p);
      if (precedence(*e.lhs) < p) lhs = "(" + lhs + ")";
      std::string rhs = printExprPrec(*e.rhs, p);
      if (precedence(*e.rhs) <= p) rhs = "(" + rhs + ")";
      return lhs + " " + std::string(binOpText(e.op)) + " " + rhs;
    }
  }
  return {};
}

class UnitPrinter {
 public:
  std::string run(const Unit& u) {
    for (const EnumDecl& e : u.enums) {
      line("enum " + e.name + " {");
      indent_++;
      std::string consts;
      for (size_t i = 0; i < e.constants.size(); ++i) {
        if (i) consts += ", ";
        consts += e.constants[i];
      }
      line(consts);
      indent_--;
      line("}");
      line("");
    }
    for (const ClassDecl& c : u.classes) {
      line("class " + c.name + " {");
      indent_++;
      for (const FieldDecl& f : c.fields) line(f.type + " " + f.name + ";");
      for (const MethodDecl& m : c.methods) {
        line("");
        std::string sig = m.returnType + " " + m.name + "(";
        for (size_t i = 0; i < m.params.size(); ++i) {
          if (i) sig += ", ";
          sig += m.params[i].type + " " + m.params[i].name;
        }
        sig += ") {";
        line(sig);
        indent_++;
        for (const StmtPtr& s : m.body->body) printStmt(*s);
        indent_--;
        line("}");
      }
      indent_--;
      line("}");
      line("");
    }
    return out_.str();
  }

 private:
  void line(const std::string& s) {
    if (s.empty()) {
      out_ << "\n";
      return;
    }
    for (int i = 0; i < indent_; ++i) out_ << "    ";
    out_ << s << "\n";
  }

  // Prints a statement used as a branch/loop body: blocks get braces on the
  // same line, single statements print nested.
  void printBody(const Stmt& s, const std::string& head, const std::string& tail) {
    if (s.kind == Stmt::Kind::Block) {
      line(head + " {");
      indent_++;
      for (const StmtPtr& c : s.body) printStmt(*c);
      indent_--;
      line("}" + tail);
    } else {
      line(head);
      indent_++;
      printStmt(s);
      indent_--;
      if (!tail.empty()) line(tail);
    }
  }

  void printStmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Block:
        line("{");
        indent_++;
        for (const StmtPtr& c : s.body) printStmt(*c);
        indent_--;
        line("}");
        break;
      case Stmt::Kind::LocalDecl:
        line(s.typeName + " " + s.name +
             (s.expr ? " = " + printExprPrec(*s.expr, 0) : std::string()) + ";");
        break;
      case Stmt::Kind::Assign:
        line(s.name + " = " + printExprPrec(*s.expr, 0) + ";");
        break;
      case Stmt::Kind::If: {
        const std::string head = "if (" + printExprPrec(*s.expr, 0) + ")";
        if (s.elseStmt) {
          printBody(*s.thenStmt, head, "");
          printBody(*s.elseStmt, "else", "");
        } else {
          printBody(*s.thenStmt, head, "");
        }
        break;
      }
      case Stmt::Kind::Switch:
        line("switch (" + printExprPrec(*s.expr, 0) + ") {");
        indent_++;
        for (const SwitchCase& c : s.cases) {
          line(c.isDefault ? "default:" : "case " + c.label + ":");
          indent_++;
          for (const StmtPtr& b : c.body) printStmt(*b);
          indent_--;
        }
        indent_--;
        line("}");
        break;
      case Stmt::Kind::For: {
        std::string head = "for (";
        head += s.forInit ? inlineStmt(*s.forInit) : ";";
        head += " ";
        if (s.expr) head += printExprPrec(*s.expr, 0);
        head += "; ";
        if (s.forUpdate) {
          head += s.forUpdate->name + " = " + printExprPrec(*s.forUpdate->expr, 0);
        }
        head += ")";
        printBody(*s.loopBody, head, "");
        break;
      }
      case Stmt::Kind::ForEach: {
        std::string head = "for (";
        if (!s.typeName.empty()) head += s.typeName + " ";
        head += s.name + " : " + printExprPrec(*s.expr, 0) + ")";
        printBody(*s.loopBody, head, "");
        break;
      }
      case Stmt::Kind::Return:
        line(s.expr ? "return " + printExprPrec(*s.expr, 0) + ";" : "return;");
        break;
      case Stmt::Kind::Throw:
        line("throw " + printExprPrec(*s.expr, 0) + ";");
        break;
      case Stmt::Kind::ExprStmt:
        line(printExprPrec(*s.expr, 0) + ";");
        break;
      case Stmt::Kind::Break:
        line("break;");
        break;
    }
  }

  // Declaration or assignment rendered inline for for-headers (with ';').
  std::string inlineStmt(const Stmt& s) {
    if (s.kind == Stmt::Kind::LocalDecl)
      return s.typeName + " " + s.name +
             (s.expr ? " = " + printExprPrec(*s.expr, 0) : std::string()) + ";";
    return s.name + " = " + printExprPrec(*s.expr, 0) + ";";
  }

  std::ostringstream out_;
  int indent_ = 0;
};

}  // namespace

std::string printExpr(const Expr& e) { return printExprPrec(e, 0); }

std::string printUnit(const Unit& u) { return UnitPrinter{}.run(u); }

}  // namespace cminer::lang
