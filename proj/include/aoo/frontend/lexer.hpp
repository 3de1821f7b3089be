#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aoo/frontend/ast.hpp"

namespace aoo {

enum class Tok {
  Ident,
  Int,
  Char,
  Keyword,
  Punct,
  Marker,  // a `//Comp...` comment line
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Location loc;
};

// Splits source text into tokens. Comments are dropped, except that a line
// comment beginning with `//Comp` becomes a Marker token.
std::vector<Token> lex(std::string_view source, const std::string& file);

bool is_keyword(std::string_view word);

}  // namespace aoo
