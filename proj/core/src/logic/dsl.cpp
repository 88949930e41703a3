#include "cminer/logic/dsl.hpp"

#include <cctype>
#include <optional>

namespace cminer::logic {

namespace {

enum class Tok {
  End,
  Path,     // ident ("." ident)*
  Keyword,  // and or not present len in invalid requires exactly-one all-or-none unparsed true false
  String,
  Int,
  Double,
  Arrow,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  At,
  CmpOp,
};

const std::set<std::string> kKeywords = {
    "and",     "or",          "not",      "present", "len",  "in",   "invalid",
    "requires", "exactly-one", "all-or-none", "unparsed", "true", "false"};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t intValue = 0;
  double doubleValue = 0.0;
  CmpOp op = CmpOp::Eq;
  int col = 1;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, int lineNo) : line_(line), lineNo_(lineNo) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipSpace();
      if (pos_ >= line_.size() || line_[pos_] == '#') break;
      out.push_back(next());
    }
    Token end;
    end.col = static_cast<int>(pos_) + 1;
    out.push_back(end);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DslError(msg, lineNo_, static_cast<int>(pos_) + 1);
  }

  void skipSpace() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
  }

  static bool identChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Token next() {
    Token t;
    t.col = static_cast<int>(pos_) + 1;
    const char c = line_[pos_];

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word = readIdent();
      // Hyphenated keywords.
      for (const char* kw : {"exactly-one", "all-or-none"}) {
        std::string_view rest(kw);
        if (rest.substr(0, word.size()) == word && pos_ < line_.size() &&
            line_[pos_] == '-') {
          const size_t save = pos_;
          std::string candidate = word;
          while (pos_ < line_.size() && (identChar(line_[pos_]) || line_[pos_] == '-'))
            candidate += line_[pos_++];
          if (candidate == kw) {
            word = candidate;
            break;
          }
          pos_ = save;
        }
      }
      if (kKeywords.contains(word)) {
        t.kind = Tok::Keyword;
        t.text = word;
        return t;
      }
      // Dotted parameter path.
      while (pos_ < line_.size() && line_[pos_] == '.') {
        ++pos_;
        if (pos_ >= line_.size() || !identChar(line_[pos_])) fail("expected path segment after '.'");
        word += '.';
        word += readIdent();
      }
      t.kind = Tok::Path;
      t.text = word;
      return t;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < line_.size() &&
         std::isdigit(static_cast<unsigned char>(line_[pos_ + 1])))) {
      return readNumber();
    }

    switch (c) {
      case '"': return readString();
      case '(': ++pos_; t.kind = Tok::LParen; return t;
      case ')': ++pos_; t.kind = Tok::RParen; return t;
      case '{': ++pos_; t.kind = Tok::LBrace; return t;
      case '}': ++pos_; t.kind = Tok::RBrace; return t;
      case '[': ++pos_; t.kind = Tok::LBracket; return t;
      case ']': ++pos_; t.kind = Tok::RBracket; return t;
      case ',': ++pos_; t.kind = Tok::Comma; return t;
      case '@': ++pos_; t.kind = Tok::At; return t;
      case '-':
        if (pos_ + 1 < line_.size() && line_[pos_ + 1] == '>') {
          pos_ += 2;
          t.kind = Tok::Arrow;
          return t;
        }
        fail("stray '-'");
      case '<':
        ++pos_;
        t.kind = Tok::CmpOp;
        t.op = CmpOp::Lt;
        if (pos_ < line_.size() && line_[pos_] == '=') { ++pos_; t.op = CmpOp::Le; }
        return t;
      case '>':
        ++pos_;
        t.kind = Tok::CmpOp;
        t.op = CmpOp::Gt;
        if (pos_ < line_.size() && line_[pos_] == '=') { ++pos_; t.op = CmpOp::Ge; }
        return t;
      case '=':
        if (pos_ + 1 < line_.size() && line_[pos_ + 1] == '=') {
          pos_ += 2;
          t.kind = Tok::CmpOp;
          t.op = CmpOp::Eq;
          return t;
        }
        fail("expected '=='");
      case '!':
        if (pos_ + 1 < line_.size() && line_[pos_ + 1] == '=') {
          pos_ += 2;
          t.kind = Tok::CmpOp;
          t.op = CmpOp::Ne;
          return t;
        }
        fail("expected '!='");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string readIdent() {
    std::string out;
    while (pos_ < line_.size() && identChar(line_[pos_])) out += line_[pos_++];
    return out;
  }

  Token readNumber() {
    Token t;
    t.col = static_cast<int>(pos_) + 1;
    std::string digits;
    if (line_[pos_] == '-') digits += line_[pos_++];
    bool isDouble = false;
    while (pos_ < line_.size() &&
           (std::isdigit(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '.')) {
      if (line_[pos_] == '.') {
        if (pos_ + 1 >= line_.size() ||
            !std::isdigit(static_cast<unsigned char>(line_[pos_ + 1])))
          break;  // path-style dot cannot follow a number; treat as end
        isDouble = true;
      }
      digits += line_[pos_++];
    }
    if (isDouble) {
      t.kind = Tok::Double;
      t.doubleValue = std::stod(digits);
    } else {
      t.kind = Tok::Int;
      t.intValue = std::stoll(digits);
    }
    return t;
  }

  Token readString() {
    Token t;
    t.col = static_cast<int>(pos_) + 1;
    t.kind = Tok::String;
    ++pos_;  // opening quote
    while (pos_ < line_.size() && line_[pos_] != '"') {
      char c = line_[pos_++];
      if (c == '\\') {
        if (pos_ >= line_.size()) fail("unterminated escape");
        const char e = line_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
      }
      t.text += c;
    }
    if (pos_ >= line_.size()) fail("unterminated string literal");
    ++pos_;  // closing quote
    return t;
  }

  std::string_view line_;
  int lineNo_;
  size_t pos_ = 0;
};

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int lineNo, const std::set<std::string>* catalog)
      : tokens_(std::move(tokens)), lineNo_(lineNo), catalog_(catalog) {}

  Constraint parseStatement(Origin origin, std::string_view sourceName) {
    Constraint c;
    c.origin = origin;
    c.sourceRef = std::string(sourceName) + ":" + std::to_string(lineNo_);

    if (peek().kind == Tok::Keyword && peek().text == "requires") {
      c.precondition = parseRequires();
    } else if (peek().kind == Tok::Keyword && peek().text == "exactly-one") {
      c.precondition = parseExactlyOne();
    } else if (peek().kind == Tok::Keyword && peek().text == "all-or-none") {
      c.precondition = parseAllOrNone();
    } else {
      c.precondition = parseFormula();
      expectArrowInvalid();
    }
    parseLabels(c);
    expect(Tok::End, "end of line");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DslError(msg, lineNo_, peek().col);
  }

  const Token& peek() const { return tokens_[idx_]; }
  Token take() { return tokens_[idx_++]; }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail("expected " + what);
    return take();
  }

  bool atKeyword(std::string_view kw) const {
    return peek().kind == Tok::Keyword && peek().text == kw;
  }

  void expectKeyword(std::string_view kw) {
    if (!atKeyword(kw)) fail("expected '" + std::string(kw) + "'");
    take();
  }

  void expectArrowInvalid() {
    expect(Tok::Arrow, "'->'");
    expectKeyword("invalid");
  }

  std::string parsePath() {
    const Token t = expect(Tok::Path, "parameter path");
    if (catalog_ && !catalog_->contains(t.text))
      throw DslError("unknown parameter path '" + t.text + "'", lineNo_, t.col);
    return t.text;
  }

  Literal parseLiteral() {
    switch (peek().kind) {
      case Tok::String: return take().text;
      case Tok::Int: return take().intValue;
      case Tok::Double: return take().doubleValue;
      case Tok::Keyword:
        if (peek().text == "true") { take(); return true; }
        if (peek().text == "false") { take(); return false; }
        [[fallthrough]];
      default:
        fail("expected literal");
    }
  }

  // requires(A, B) | requires(A == "v", B) | requires(A, [B, C])
  Formula parseRequires() {
    take();  // requires
    expect(Tok::LParen, "'('");
    const std::string condPath = parsePath();
    Formula condition = Formula::leaf(PresentAtom{condPath});
    if (peek().kind == Tok::CmpOp) {
      const CmpOp op = take().op;
      if (op != CmpOp::Eq) fail("requires-condition supports '==' only");
      condition = valueAtom(condPath, parseLiteral());
    }
    expect(Tok::Comma, "','");

    std::vector<std::string> targets;
    if (peek().kind == Tok::LBracket) {
      take();
      targets.push_back(parsePath());
      while (peek().kind == Tok::Comma) {
        take();
        targets.push_back(parsePath());
      }
      expect(Tok::RBracket, "']'");
    } else {
      targets.push_back(parsePath());
    }
    expect(Tok::RParen, "')'");

    std::vector<Formula> missing;
    for (const auto& t : targets)
      missing.push_back(Formula::negation(Formula::leaf(PresentAtom{t})));
    return Formula::conjunction({std::move(condition), Formula::disjunction(std::move(missing))});
  }

  // Violated when none or more than one of the parameters is present.
  Formula parseExactlyOne() {
    take();
    const auto paths = parseParenPathList(2);
    std::vector<Formula> cases;
    std::vector<Formula> allAbsent;
    for (const auto& p : paths)
      allAbsent.push_back(Formula::negation(Formula::leaf(PresentAtom{p})));
    cases.push_back(Formula::conjunction(std::move(allAbsent)));
    for (size_t i = 0; i < paths.size(); ++i)
      for (size_t j = i + 1; j < paths.size(); ++j)
        cases.push_back(Formula::conjunction(
            {Formula::leaf(PresentAtom{paths[i]}), Formula::leaf(PresentAtom{paths[j]})}));
    return Formula::disjunction(std::move(cases));
  }

  // Violated when some but not all of the parameters are present.
  Formula parseAllOrNone() {
    take();
    const auto paths = parseParenPathList(2);
    std::vector<Formula> cases;
    for (size_t i = 0; i < paths.size(); ++i)
      for (size_t j = 0; j < paths.size(); ++j) {
        if (i == j) continue;
        cases.push_back(Formula::conjunction(
            {Formula::leaf(PresentAtom{paths[i]}),
             Formula::negation(Formula::leaf(PresentAtom{paths[j]}))}));
      }
    return Formula::disjunction(std::move(cases));
  }

  std::vector<std::string> parseParenPathList(size_t minCount) {
    expect(Tok::LParen, "'('");
    std::vector<std::string> paths;
    paths.push_back(parsePath());
    while (peek().kind == Tok::Comma) {
      take();
      paths.push_back(parsePath());
    }
    expect(Tok::RParen, "')'");
    if (paths.size() < minCount) fail("expected at least " + std::to_string(minCount) + " parameters");
    return paths;
  }

  Formula parseFormula() { return parseOr(); }

  Formula parseOr() {
    std::vector<Formula> parts;
    parts.push_back(parseAnd());
    while (atKeyword("or")) {
      take();
      parts.push_back(parseAnd());
    }
    return parts.size() == 1 ? std::move(parts.front())
                             : Formula::disjunction(std::move(parts));
  }

  Formula parseAnd() {
    std::vector<Formula> parts;
    parts.push_back(parseNot());
    while (atKeyword("and")) {
      take();
      parts.push_back(parseNot());
    }
    return parts.size() == 1 ? std::move(parts.front())
                             : Formula::conjunction(std::move(parts));
  }

  Formula parseNot() {
    if (atKeyword("not")) {
      take();
      return Formula::negation(parseNot());
    }
    return parsePrimary();
  }

  Formula parsePrimary() {
    if (peek().kind == Tok::LParen) {
      take();
      Formula f = parseFormula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parseAtom();
  }

  Formula valueAtom(const std::string& path, Literal v) {
    if (isNumeric(v)) return Formula::leaf(CmpAtom{path, CmpOp::Eq, std::move(v)});
    return Formula::leaf(EqAtom{path, std::move(v)});
  }

  Formula parseAtom() {
    if (atKeyword("present")) {
      take();
      expect(Tok::LParen, "'('");
      const std::string p = parsePath();
      expect(Tok::RParen, "')'");
      return Formula::leaf(PresentAtom{p});
    }
    if (atKeyword("len")) {
      take();
      expect(Tok::LParen, "'('");
      const std::string p = parsePath();
      expect(Tok::RParen, "')'");
      const Token opTok = expect(Tok::CmpOp, "comparison operator");
      const Token bound = expect(Tok::Int, "non-negative length bound");
      if (bound.intValue < 0) fail("length bound must be >= 0");
      return Formula::leaf(LenAtom{p, opTok.op, bound.intValue});
    }
    if (atKeyword("unparsed")) {
      take();
      expect(Tok::LParen, "'('");
      const Token text = expect(Tok::String, "string literal");
      expect(Tok::RParen, "')'");
      return Formula::leaf(UnparsedAtom{text.text});
    }

    const std::string path = parsePath();
    if (atKeyword("in")) {
      take();
      expect(Tok::LBrace, "'{'");
      std::vector<Literal> values;
      values.push_back(parseLiteral());
      while (peek().kind == Tok::Comma) {
        take();
        values.push_back(parseLiteral());
      }
      expect(Tok::RBrace, "'}'");
      return Formula::leaf(InSetAtom{path, std::move(values)});
    }

    const Token opTok = expect(Tok::CmpOp, "comparison operator");
    if (peek().kind == Tok::Path) {
      const std::string rhs = parsePath();
      if (catalog_ && !catalog_->contains(rhs))
        fail("unknown parameter path '" + rhs + "'");
      return Formula::leaf(CmpParamsAtom{path, opTok.op, rhs});
    }
    Literal v = parseLiteral();
    if (isNumeric(v)) return Formula::leaf(CmpAtom{path, opTok.op, std::move(v)});
    if (opTok.op == CmpOp::Eq) return Formula::leaf(EqAtom{path, std::move(v)});
    if (opTok.op == CmpOp::Ne)
      return Formula::negation(Formula::leaf(EqAtom{path, std::move(v)}));
    fail("string/boolean literals support '==' and '!=' only");
  }

  void parseLabels(Constraint& c) {
    while (peek().kind == Tok::At) {
      take();
      const Token name = expect(Tok::Path, "label name");
      expect(Tok::LParen, "'('");
      const Token value = peek().kind == Tok::Path ? take() : expect(Tok::Keyword, "label value");
      expect(Tok::RParen, "')'");
      if (name.text == "class") {
        if (value.text == "inter") c.klass = ConstraintClass::Inter;
        else if (value.text == "single") c.klass = ConstraintClass::Single;
        else fail("@class expects 'inter' or 'single'");
      } else if (name.text == "cat") {
        c.category = value.text;
      } else {
        fail("unknown label '@" + name.text + "'");
      }
    }
  }

  std::vector<Token> tokens_;
  size_t idx_ = 0;
  int lineNo_;
  const std::set<std::string>* catalog_;
};

}  // namespace

std::vector<Constraint> parseDsl(std::string_view text,
                                 const std::set<std::string>* pathCatalog, Origin origin,
                                 std::string_view sourceName) {
  std::vector<Constraint> out;
  int lineNo = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++lineNo;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;

    std::vector<Token> tokens = LineLexer(line, lineNo).run();
    if (tokens.size() == 1) {
      if (end == text.size()) break;
      continue;  // blank or comment-only line
    }
    LineParser parser(std::move(tokens), lineNo, pathCatalog);
    out.push_back(parser.parseStatement(origin, sourceName));
    if (end == text.size()) break;
  }
  return out;
}

std::string printConstraint(const Constraint& c) {
  std::string out = printFormula(c.precondition) + " -> invalid";
  if (c.klass == ConstraintClass::Inter) out += " @class(inter)";
  if (c.klass == ConstraintClass::Single) out += " @class(single)";
  if (!c.category.empty()) out += " @cat(" + c.category + ")";
  return out;
}

std::string printConstraints(std::span<const Constraint> cs) {
  std::string out;
  for (const Constraint& c : cs) {
    out += printConstraint(c);
    out += '\n';
  }
  return out;
}

}  // namespace cminer::logic
