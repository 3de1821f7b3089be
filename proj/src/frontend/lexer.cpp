#include "aoo/frontend/lexer.hpp"

#include <array>
#include <cctype>

#include "aoo/support/error.hpp"

namespace aoo {

namespace {

constexpr std::array kKeywords = {
    "extends", "while", "if",   "else", "return", "new",     "null", "this",
    "true",    "false", "void", "int",  "char",   "boolean", "class"};

// Longest first so that `:=` wins over `:` and `==` over `=`.
constexpr std::array kPuncts = {":=", "==", "!=", "<=", ">=", "&&", "||", "{", "}", "(", ")",
                                ";",  ",",  ".",  "=",  "<",  ">",  "!",  "+", "-", "*", "?",
                                ":"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) break;
      Location loc{line_, col_};
      char c = src_[pos_];
      if (c == '/' && peek(1) == '/') {
        std::size_t end = src_.find('\n', pos_);
        if (end == std::string_view::npos) end = src_.size();
        std::string_view text = trim(src_.substr(pos_, end - pos_));
        if (text.substr(0, 6) == "//Comp") out.push_back({Tok::Marker, std::string(text), loc});
        advance(end - pos_);
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        std::size_t end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) fail(loc, "unterminated block comment");
        advance(end + 2 - pos_);
        continue;
      }
      if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance(1);
        std::string word(src_.substr(start, pos_ - start));
        out.push_back({is_keyword(word) ? Tok::Keyword : Tok::Ident, word, loc});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        out.push_back({Tok::Int, std::string(src_.substr(start, pos_ - start)), loc});
        continue;
      }
      if (c == '\'') {
        out.push_back({Tok::Char, lex_char(loc), loc});
        continue;
      }
      bool matched = false;
      for (std::string_view p : kPuncts) {
        if (src_.substr(pos_, p.size()) == p) {
          out.push_back({Tok::Punct, std::string(p), loc});
          advance(p.size());
          matched = true;
          break;
        }
      }
      if (!matched) fail(loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::End, "", {line_, col_}});
    return out;
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  // Returns the code point as decimal text.
  std::string lex_char(Location loc) {
    advance(1);
    if (pos_ >= src_.size()) fail(loc, "unterminated character literal");
    std::uint32_t cp = 0;
    char c = src_[pos_];
    if (c == '\\') {
      char e = peek(1);
      switch (e) {
        case 'n': cp = '\n'; break;
        case 't': cp = '\t'; break;
        case '0': cp = 0; break;
        case '\\': cp = '\\'; break;
        case '\'': cp = '\''; break;
        default: fail(loc, "unknown escape in character literal");
      }
      advance(2);
    } else {
      auto byte = static_cast<unsigned char>(c);
      if (byte < 0x80) {
        cp = byte;
        advance(1);
      } else {
        // UTF-8 multi-byte sequence.
        int len = byte >= 0xF0 ? 4 : byte >= 0xE0 ? 3 : 2;
        cp = byte & (0xFF >> (len + 1));
        for (int i = 1; i < len; ++i) cp = (cp << 6) | (static_cast<unsigned char>(peek(i)) & 0x3F);
        advance(len);
      }
    }
    if (cp >= 0x10000) fail(loc, "character literal outside the 16-bit domain");
    if (pos_ >= src_.size() || src_[pos_] != '\'') fail(loc, "unterminated character literal");
    advance(1);
    return std::to_string(cp);
  }

  [[noreturn]] void fail(Location loc, const std::string& msg) {
    throw SourceError({file_, loc.line, loc.col, "E-LEX", msg});
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (std::string_view k : kKeywords)
    if (k == word) return true;
  return false;
}

std::vector<Token> lex(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

}  // namespace aoo
