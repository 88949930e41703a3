#pragma once

#include <string>
#include <vector>

#include "cminer/lang/ast.hpp"

namespace cminer::lang {

enum class TokKind {
  End,
  Ident,
  Keyword,
  IntLit,
  StringLit,
  Punct,  // one of ( ) { } < > , ; . = ! + - * / : == != <= >= && || ++ --
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::int64_t intValue = 0;
  Span span;
};

/// Tokenizes a unit. Constructs outside the subset that have a recognizable
/// keyword (`while`, `try`, ...) lex as keywords and are rejected by the
/// parser with an unsupported-construct error; a `->` lexes as a lambda
/// marker and is rejected here.
std::vector<Token> lex(const std::string& source, const std::string& fileName);

}  // namespace cminer::lang
