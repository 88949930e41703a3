#include <optional>
#include <set>

#include "cminer/lang/lexer.hpp"

namespace cminer::lang {

namespace {

const std::set<std::string> kUnsupportedKeywords = {
    "while", "do", "try", "catch", "finally", "instanceof", "static",
    "interface", "extends", "implements", "synchronized", "continue", "lambda"};

const char* unsupportedName(const std::string& kw) {
  if (kw == "try" || kw == "catch" || kw == "finally") return "try-catch";
  if (kw == "while" || kw == "do") return "while loop";
  return nullptr;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string source, std::string fileName)
      : tokens_(std::move(tokens)), source_(std::move(source)), file_(std::move(fileName)) {}

  Unit run() {
    Unit unit;
    unit.fileName = file_;
    unit.source = source_;
    while (!at(TokKind::End)) {
      if (atKeyword("class")) {
        unit.classes.push_back(parseClass());
      } else if (atKeyword("enum")) {
        unit.enums.push_back(parseEnum());
      } else {
        fail("expected class or enum declaration");
      }
    }
    return unit;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + " in " + file_, t.span.line, t.span.col);
  }

  const Token& peek(size_t ahead = 0) const {
    const size_t i = idx_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  Token take() { return tokens_[idx_ < tokens_.size() - 1 ? idx_++ : idx_]; }

  bool at(TokKind k) const { return peek().kind == k; }
  bool atPunct(std::string_view p) const {
    return peek().kind == TokKind::Punct && peek().text == p;
  }
  bool atKeyword(std::string_view k) const {
    return peek().kind == TokKind::Keyword && peek().text == k;
  }

  void rejectUnsupported() {
    if (peek().kind == TokKind::Keyword && kUnsupportedKeywords.contains(peek().text)) {
      const char* name = unsupportedName(peek().text);
      throw UnsupportedConstructError(name ? name : peek().text, peek().span.line,
                                      peek().span.col);
    }
  }

  Token expectPunct(std::string_view p) {
    if (!atPunct(p)) fail("expected '" + std::string(p) + "'");
    return take();
  }
  Token expectIdent() {
    if (!at(TokKind::Ident)) fail("expected identifier");
    return take();
  }
  void expectKeyword(std::string_view k) {
    if (!atKeyword(k)) fail("expected '" + std::string(k) + "'");
    take();
  }

  static bool isTypeKeyword(const Token& t) {
    return t.kind == TokKind::Keyword &&
           (t.text == "int" || t.text == "long" || t.text == "double" ||
            t.text == "boolean" || t.text == "void");
  }

  // type := (primitive | Ident) ('<' type (',' type)* '>')?
  // Returns the rendered type name ("List<String>").
  std::optional<std::string> tryParseType() {
    if (isTypeKeyword(peek())) return take().text;
    if (!at(TokKind::Ident)) return std::nullopt;
    const size_t save = idx_;
    std::string name = take().text;
    if (atPunct("<")) {
      take();
      std::string args;
      while (true) {
        auto inner = tryParseType();
        if (!inner) {
          idx_ = save;
          return std::nullopt;
        }
        args += *inner;
        if (atPunct(",")) {
          take();
          args += ", ";
          continue;
        }
        break;
      }
      if (!atPunct(">")) {
        idx_ = save;
        return std::nullopt;
      }
      take();
      name += "<" + args + ">";
    }
    return name;
  }

  ClassDecl parseClass() {
    ClassDecl cls;
    cls.span = peek().span;
    expectKeyword("class");
    cls.name = expectIdent().text;
    rejectUnsupported();
    expectPunct("{");
    while (!atPunct("}")) {
      rejectUnsupported();
      auto type = tryParseType();
      if (!type) fail("expected member declaration");
      const std::string name = expectIdent().text;
      if (atPunct("(")) {
        cls.methods.push_back(parseMethodRest(*type, name));
      } else {
        FieldDecl field;
        field.type = *type;
        field.name = name;
        field.span = peek().span;
        expectPunct(";");
        cls.fields.push_back(std::move(field));
      }
    }
    expectPunct("}");
    return cls;
  }

  MethodDecl parseMethodRest(std::string returnType, std::string name) {
    MethodDecl m;
    m.returnType = std::move(returnType);
    m.name = std::move(name);
    m.span = peek().span;
    expectPunct("(");
    while (!atPunct(")")) {
      auto type = tryParseType();
      if (!type) fail("expected parameter type");
      m.params.push_back({*type, expectIdent().text});
      if (atPunct(",")) take();
    }
    expectPunct(")");
    m.body = parseBlock();
    return m;
  }

  EnumDecl parseEnum() {
    EnumDecl e;
    e.span = peek().span;
    expectKeyword("enum");
    e.name = expectIdent().text;
    expectPunct("{");
    while (!atPunct("}")) {
      e.constants.push_back(expectIdent().text);
      if (atPunct(",")) take();
    }
    expectPunct("}");
    return e;
  }

  StmtPtr parseBlock() {
    auto block = std::make_unique<Stmt>();
    block->kind = Stmt::Kind::Block;
    block->span = peek().span;
    expectPunct("{");
    while (!atPunct("}")) block->body.push_back(parseStmt());
    block->span.end = peek().span.end;
    expectPunct("}");
    return block;
  }

  StmtPtr parseStmt() {
    rejectUnsupported();
    if (atPunct("{")) return parseBlock();
    if (atKeyword("if")) return parseIf();
    if (atKeyword("switch")) return parseSwitch();
    if (atKeyword("for")) return parseFor();
    if (atKeyword("return")) return parseReturn();
    if (atKeyword("throw")) return parseThrow();
    if (atKeyword("break")) {
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Kind::Break;
      s->span = take().span;
      expectPunct(";");
      return s;
    }
    return parseSimpleStmt(true);
  }

  // Local declaration, assignment, or expression statement.
  StmtPtr parseSimpleStmt(bool expectSemicolon) {
    const Span start = peek().span;

    // Attempt `Type name (= expr)?`.
    {
      const size_t save = idx_;
      auto type = tryParseType();
      if (type && at(TokKind::Ident)) {
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::LocalDecl;
        s->span = start;
        s->typeName = *type;
        s->name = take().text;
        if (atPunct("=")) {
          take();
          s->expr = parseExpr();
        }
        if (expectSemicolon) expectPunct(";");
        return s;
      }
      idx_ = save;
    }

    if (at(TokKind::Ident) && peek(1).kind == TokKind::Punct && peek(1).text == "=") {
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Kind::Assign;
      s->span = start;
      s->name = take().text;
      take();  // '='
      s->expr = parseExpr();
      if (expectSemicolon) expectPunct(";");
      return s;
    }

    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::ExprStmt;
    s->span = start;
    s->expr = parseExpr();
    if (atPunct("="))
      throw UnsupportedConstructError("field assignment", peek().span.line, peek().span.col);
    if (expectSemicolon) expectPunct(";");
    return s;
  }

  StmtPtr parseIf() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::If;
    s->span = take().span;  // if
    expectPunct("(");
    s->expr = parseExpr();
    expectPunct(")");
    s->thenStmt = parseStmt();
    if (atKeyword("else")) {
      take();
      s->elseStmt = parseStmt();
    }
    return s;
  }

  StmtPtr parseSwitch() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Switch;
    s->span = take().span;  // switch
    expectPunct("(");
    s->expr = parseExpr();
    expectPunct(")");
    expectPunct("{");
    while (!atPunct("}")) {
      SwitchCase c;
      c.span = peek().span;
      if (atKeyword("case")) {
        take();
        if (at(TokKind::IntLit)) {
          c.label = take().text;
        } else if (at(TokKind::StringLit)) {
          c.label = "\"" + take().text + "\"";
        } else {
          c.label = expectIdent().text;
        }
      } else if (atKeyword("default")) {
        take();
        c.isDefault = true;
      } else {
        fail("expected 'case' or 'default'");
      }
      expectPunct(":");
      while (!atKeyword("case") && !atKeyword("default") && !atPunct("}"))
        c.body.push_back(parseStmt());
      s->cases.push_back(std::move(c));
    }
    expectPunct("}");
    return s;
  }

  StmtPtr parseFor() {
    auto s = std::make_unique<Stmt>();
    s->span = take().span;  // for
    expectPunct("(");

    // For-each: `for ([Type] name : iterable)`.
    {
      const size_t save = idx_;
      std::string typeName;
      if (auto type = tryParseType(); type && at(TokKind::Ident)) typeName = *type;
      if (at(TokKind::Ident) && peek(1).kind == TokKind::Punct && peek(1).text == ":") {
        s->kind = Stmt::Kind::ForEach;
        s->typeName = typeName;
        s->name = take().text;
        take();  // ':'
        s->expr = parseExpr();
        expectPunct(")");
        s->loopBody = parseStmt();
        return s;
      }
      idx_ = save;
      if (at(TokKind::Ident) && peek(1).kind == TokKind::Punct && peek(1).text == ":") {
        s->kind = Stmt::Kind::ForEach;
        s->name = take().text;
        take();
        s->expr = parseExpr();
        expectPunct(")");
        s->loopBody = parseStmt();
        return s;
      }
    }

    s->kind = Stmt::Kind::For;
    if (atPunct(";")) {
      take();
    } else {
      s->forInit = parseSimpleStmt(true);
    }
    if (!atPunct(";")) s->expr = parseExpr();
    expectPunct(";");
    if (!atPunct(")")) s->forUpdate = parseForUpdate();
    expectPunct(")");
    s->loopBody = parseStmt();
    return s;
  }

  // `i = expr`, `i++`, or `i--`; increments desugar to assignments.
  StmtPtr parseForUpdate() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Assign;
    s->span = peek().span;
    s->name = expectIdent().text;
    if (atPunct("++") || atPunct("--")) {
      const bool inc = take().text == "++";
      auto var = std::make_unique<Expr>();
      var->kind = Expr::Kind::Var;
      var->span = s->span;
      var->text = s->name;
      auto one = std::make_unique<Expr>();
      one->kind = Expr::Kind::IntLit;
      one->span = s->span;
      one->intValue = 1;
      one->text = "1";
      auto add = std::make_unique<Expr>();
      add->kind = Expr::Kind::Binary;
      add->span = s->span;
      add->op = inc ? BinOp::Add : BinOp::Sub;
      add->lhs = std::move(var);
      add->rhs = std::move(one);
      s->expr = std::move(add);
      return s;
    }
    expectPunct("=");
    s->expr = parseExpr();
    return s;
  }

  StmtPtr parseReturn() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Return;
    s->span = take().span;
    if (!atPunct(";")) s->expr = parseExpr();
    expectPunct(";");
    return s;
  }

  StmtPtr parseThrow() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Throw;
    s->span = take().span;
    s->expr = parseExpr();
    expectPunct(";");
    return s;
  }

  // ---- expressions ----

  ExprPtr parseExpr() { return parseOr(); }

  ExprPtr makeBinary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = op;
    e->span = lhs->span;
    e->span.end = rhs->span.end;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
  }

  ExprPtr parseOr() {
    ExprPtr e = parseAnd();
    while (atPunct("||")) {
      take();
      e = makeBinary(BinOp::Or, std::move(e), parseAnd());
    }
    return e;
  }

  ExprPtr parseAnd() {
    ExprPtr e = parseEquality();
    while (atPunct("&&")) {
      take();
      e = makeBinary(BinOp::And, std::move(e), parseEquality());
    }
    return e;
  }

  ExprPtr parseEquality() {
    ExprPtr e = parseRelational();
    while (atPunct("==") || atPunct("!=")) {
      const BinOp op = take().text == "==" ? BinOp::Eq : BinOp::Ne;
      e = makeBinary(op, std::move(e), parseRelational());
    }
    return e;
  }

  ExprPtr parseRelational() {
    ExprPtr e = parseAdditive();
    while (atPunct("<") || atPunct("<=") || atPunct(">") || atPunct(">=")) {
      const std::string op = take().text;
      BinOp b = op == "<" ? BinOp::Lt : op == "<=" ? BinOp::Le : op == ">" ? BinOp::Gt : BinOp::Ge;
      e = makeBinary(b, std::move(e), parseAdditive());
    }
    return e;
  }

  ExprPtr parseAdditive() {
    ExprPtr e = parseMultiplicative();
    while (atPunct("+") || atPunct("-")) {
      const BinOp op = take().text == "+" ? BinOp::Add : BinOp::Sub;
      e = makeBinary(op, std::move(e), parseMultiplicative());
    }
    return e;
  }

  ExprPtr parseMultiplicative() {
    ExprPtr e = parseUnary();
    while (atPunct("*") || atPunct("/")) {
      const BinOp op = take().text == "*" ? BinOp::Mul : BinOp::Div;
      e = makeBinary(op, std::move(e), parseUnary());
    }
    return e;
  }

  ExprPtr parseUnary() {
    if (atPunct("!")) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Not;
      e->span = take().span;
      e->target = parseUnary();
      e->span.end = e->target->span.end;
      return e;
    }
    return parsePostfix();
  }

  ExprPtr parsePostfix() {
    ExprPtr e = parsePrimary();
    while (atPunct(".")) {
      take();
      const Token name = expectIdent();
      auto next = std::make_unique<Expr>();
      next->span = e->span;
      next->text = name.text;
      if (atPunct("(")) {
        next->kind = Expr::Kind::MethodCall;
        next->args = parseArgs();
      } else {
        next->kind = Expr::Kind::FieldAccess;
      }
      next->span.end = tokens_[idx_ - 1].span.end;
      next->target = std::move(e);
      e = std::move(next);
    }
    return e;
  }

  std::vector<ExprPtr> parseArgs() {
    expectPunct("(");
    std::vector<ExprPtr> args;
    while (!atPunct(")")) {
      args.push_back(parseExpr());
      if (atPunct(",")) take();
    }
    expectPunct(")");
    return args;
  }

  ExprPtr parsePrimary() {
    rejectUnsupported();
    const Token& t = peek();
    auto e = std::make_unique<Expr>();
    e->span = t.span;

    if (at(TokKind::IntLit)) {
      e->kind = Expr::Kind::IntLit;
      e->intValue = take().intValue;
      return e;
    }
    if (at(TokKind::StringLit)) {
      e->kind = Expr::Kind::StringLit;
      e->text = take().text;
      return e;
    }
    if (atKeyword("true") || atKeyword("false")) {
      e->kind = Expr::Kind::BoolLit;
      e->intValue = take().text == "true" ? 1 : 0;
      return e;
    }
    if (atKeyword("null")) {
      take();
      e->kind = Expr::Kind::NullLit;
      return e;
    }
    if (atKeyword("new")) {
      take();
      e->kind = Expr::Kind::New;
      auto type = tryParseType();
      if (!type) fail("expected type after 'new'");
      e->text = *type;
      e->args = parseArgs();
      e->span.end = tokens_[idx_ - 1].span.end;
      return e;
    }
    if (atPunct("(")) {
      take();
      ExprPtr inner = parseExpr();
      expectPunct(")");
      return inner;
    }
    if (at(TokKind::Ident)) {
      const Token name = take();
      if (atPunct("(")) {
        e->kind = Expr::Kind::MethodCall;
        e->text = name.text;
        e->args = parseArgs();
        e->span.end = tokens_[idx_ - 1].span.end;
        return e;
      }
      e->kind = Expr::Kind::Var;
      e->text = name.text;
      return e;
    }
    fail("expected expression");
  }

  std::vector<Token> tokens_;
  std::string source_;
  std::string file_;
  size_t idx_ = 0;
};

}  // namespace

Unit parseUnit(std::string source, std::string fileName) {
  std::vector<Token> tokens = lex(source, fileName);
  return Parser(std::move(tokens), std::move(source), std::move(fileName)).run();
}

}  // namespace cminer::lang
