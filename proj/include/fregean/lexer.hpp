#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fregean/script.hpp"

namespace fregean {

enum class TokenKind {
  kw_stmt,
  kw_axiom,
  kw_goal,
  ident,
  text,
  colon,
  amp,
  arrow,  // =>
  iff,    // <=>
  semi,
  end,
};

inline const char* to_string(TokenKind k) {
  switch (k) {
    case TokenKind::kw_stmt: return "'stmt'";
    case TokenKind::kw_axiom: return "'axiom'";
    case TokenKind::kw_goal: return "'goal'";
    case TokenKind::ident: return "identifier";
    case TokenKind::text: return "quoted text";
    case TokenKind::colon: return "':'";
    case TokenKind::amp: return "'&'";
    case TokenKind::arrow: return "'=>'";
    case TokenKind::iff: return "'<=>'";
    case TokenKind::semi: return "';'";
    case TokenKind::end: return "end of input";
  }
  return "?";
}

struct Token {
  TokenKind kind;
  std::string value;  // identifier name or unescaped text; empty otherwise
  SourcePos pos;

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      SourcePos at = here();
      if (i_ >= src_.size()) {
        out.push_back({TokenKind::end, {}, at});
        return out;
      }
      char c = src_[i_];
      if (is_alpha(c)) {
        std::string word;
        while (i_ < src_.size() && (is_alpha(src_[i_]) || is_digit(src_[i_]) || src_[i_] == '_'))
          word += advance();
        out.push_back({keyword_or_ident(word), word, at});
        if (out.back().kind != TokenKind::ident) out.back().value.clear();
        continue;
      }
      switch (c) {
        case ';': advance(); out.push_back({TokenKind::semi, {}, at}); continue;
        case ':': advance(); out.push_back({TokenKind::colon, {}, at}); continue;
        case '&': advance(); out.push_back({TokenKind::amp, {}, at}); continue;
        case '=':
          advance();
          expect_char('>', at, "'=>'");
          out.push_back({TokenKind::arrow, {}, at});
          continue;
        case '<':
          advance();
          expect_char('=', at, "'<=>'");
          expect_char('>', at, "'<=>'");
          out.push_back({TokenKind::iff, {}, at});
          continue;
        case '"': out.push_back({TokenKind::text, quoted(), at}); continue;
        default: break;
      }
      if (is_digit(c) || c == '_' || c == '>')
        throw ScriptError(ErrorKind::syntax, at,
                          std::string("unexpected '") + c + "', expected identifier or keyword");
      throw ScriptError(ErrorKind::illegal_character, at, describe_byte(c));
    }
  }

 private:
  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  static TokenKind keyword_or_ident(const std::string& w) {
    if (w == "stmt") return TokenKind::kw_stmt;
    if (w == "axiom") return TokenKind::kw_axiom;
    if (w == "goal") return TokenKind::kw_goal;
    return TokenKind::ident;
  }

  static std::string describe_byte(char c) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string("character '") + c + "' is not allowed here";
    static const char* hex = "0123456789abcdef";
    return std::string("byte 0x") + hex[u >> 4] + hex[u & 0xf] + " is not allowed here";
  }

  SourcePos here() const { return {line_, col_}; }

  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void expect_char(char want, SourcePos start, const char* what) {
    if (i_ < src_.size() && src_[i_] == want) {
      advance();
      return;
    }
    throw ScriptError(ErrorKind::syntax, i_ < src_.size() ? here() : start,
                      std::string("malformed operator, expected ") + what);
  }

  void skip_blank() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  // Double-quoted text; \" and \\ are the only escapes. Newlines are not
  // permitted inside text.
  std::string quoted() {
    SourcePos open = here();
    advance();
    std::string out;
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\n') break;
      if (c == '\\') {
        SourcePos esc = here();
        advance();
        if (i_ >= src_.size() || (src_[i_] != '"' && src_[i_] != '\\'))
          throw ScriptError(ErrorKind::syntax, esc, "unknown escape sequence in text");
      }
      out += advance();
    }
    throw ScriptError(ErrorKind::syntax, open, "unterminated text");
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

/// Splits Flow Script source into tokens, dropping whitespace and `#`
/// comments. The result always ends with a TokenKind::end token.
inline std::vector<Token> tokenize(std::string_view source) { return detail::Lexer(source).run(); }

}  // namespace fregean
