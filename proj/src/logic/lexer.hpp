#pragma once
// Shared tokenizer for guard and scLTL text.

#include <string>
#include <string_view>
#include <vector>

#include "decoy/logic/scltl.hpp"

namespace decoy::logic::detail {

enum class Tok { Ident, True, False, Not, And, Or, Implies, LParen, RParen, Next, Eventually, Until, Reserved, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '!': out.push_back({Tok::Not, "!", start}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::Or, "|", start}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Implies, "->", start});
          i += 2;
          continue;
        }
        throw ParseError("unexpected '-'", start);
      default:
        break;
    }
    if (!is_ident_start(c)) throw ParseError(std::string("unexpected character '") + c + "'", start);
    while (i < text.size() && is_ident_char(text[i])) ++i;
    std::string word(text.substr(start, i - start));
    Tok kind = Tok::Ident;
    if (word == "true") kind = Tok::True;
    else if (word == "false") kind = Tok::False;
    else if (word == "X") kind = Tok::Next;
    else if (word == "F") kind = Tok::Eventually;
    else if (word == "U") kind = Tok::Until;
    else if (word == "W" || word == "G" || word == "R") kind = Tok::Reserved;
    out.push_back({kind, std::move(word), start});
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

}  // namespace decoy::logic::detail
