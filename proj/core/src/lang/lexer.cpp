#include "cminer/lang/lexer.hpp"

#include <cctype>
#include <set>

namespace cminer::lang {

std::string_view binOpText(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
  }
  return "?";
}

namespace {

// Keywords of the subset plus keywords recognized only to be rejected.
const std::set<std::string> kKeywords = {
    "class", "enum", "if", "else", "switch", "case", "default", "for", "return",
    "throw", "new", "break", "true", "false", "null", "void", "int", "long",
    "double", "boolean",
    // recognized-but-unsupported
    "while", "do", "try", "catch", "finally", "instanceof", "static", "lambda",
    "interface", "extends", "implements", "synchronized", "continue"};

class Lexer {
 public:
  Lexer(const std::string& source, const std::string& fileName)
      : src_(source), file_(fileName) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.span = hereSpan(pos_);
    out.push_back(end);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in " + file_, line_, col());
  }

  int col() const { return static_cast<int>(pos_ - lineStart_) + 1; }

  Span hereSpan(size_t begin) const {
    Span s;
    s.line = line_;
    s.col = static_cast<int>(begin - lineStart_) + 1;
    s.begin = begin;
    s.end = pos_;
    return s;
  }

  void skipTrivia() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        lineStart_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
          if (src_[pos_] == '\n') {
            ++line_;
            lineStart_ = pos_ + 1;
          }
          ++pos_;
        }
        if (pos_ + 1 >= src_.size()) fail("unterminated block comment");
        pos_ += 2;
      } else {
        break;
      }
    }
  }

  Token next() {
    const size_t begin = pos_;
    const char c = src_[pos_];

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Token t;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      t.text = src_.substr(begin, pos_ - begin);
      t.kind = kKeywords.contains(t.text) ? TokKind::Keyword : TokKind::Ident;
      t.span = hereSpan(begin);
      return t;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      Token t;
      t.kind = TokKind::IntLit;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      t.text = src_.substr(begin, pos_ - begin);
      t.intValue = std::stoll(t.text);
      t.span = hereSpan(begin);
      return t;
    }

    if (c == '"') {
      Token t;
      t.kind = TokKind::StringLit;
      ++pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        char ch = src_[pos_++];
        if (ch == '\\') {
          if (pos_ >= src_.size()) fail("unterminated escape");
          const char e = src_[pos_++];
          switch (e) {
            case 'n': ch = '\n'; break;
            case 't': ch = '\t'; break;
            case '"': ch = '"'; break;
            case '\\': ch = '\\'; break;
            default: fail(std::string("unknown escape '\\") + e + "'");
          }
        } else if (ch == '\n') {
          fail("unterminated string literal");
        }
        t.text += ch;
      }
      if (pos_ >= src_.size()) fail("unterminated string literal");
      ++pos_;
      t.span = hereSpan(begin);
      return t;
    }

    auto punct = [&](const std::string& p) {
      Token t;
      t.kind = TokKind::Punct;
      t.text = p;
      pos_ += p.size();
      t.span = hereSpan(begin);
      return t;
    };
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };

    if (two('-', '>')) throw UnsupportedConstructError("lambda", line_, col());
    if (two('=', '=')) return punct("==");
    if (two('!', '=')) return punct("!=");
    if (two('<', '=')) return punct("<=");
    if (two('>', '=')) return punct(">=");
    if (two('&', '&')) return punct("&&");
    if (two('|', '|')) return punct("||");
    if (two('+', '+')) return punct("++");
    if (two('-', '-')) return punct("--");

    switch (c) {
      case '(': case ')': case '{': case '}': case '<': case '>': case ',':
      case ';': case '.': case '=': case '!': case '+': case '-': case '*':
      case '/': case ':': case '[': case ']': case '?':
        if (c == '[' || c == ']') throw UnsupportedConstructError("array indexing", line_, col());
        if (c == '?') throw UnsupportedConstructError("ternary operator", line_, col());
        return punct(std::string(1, c));
      case '&': case '|':
        fail("bitwise operators are outside the analyzed subset");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& src_;
  std::string file_;
  size_t pos_ = 0;
  size_t lineStart_ = 0;
  int line_ = 1;
};

}  // namespace

std::vector<Token> lex(const std::string& source, const std::string& fileName) {
  return Lexer(source, fileName).run();
}

}  // namespace cminer::lang
