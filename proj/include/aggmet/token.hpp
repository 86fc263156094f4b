#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aggmet {

enum class TokenKind {
    Keyword,
    Identifier,
    Operator,
    Literal,
    Punctuation,
    Comment,
    Whitespace,
};

struct Token {
    TokenKind kind;
    std::string text;
    int line;  // 1-based line of the token's first character
};

// Lossless lexer for the brace-delimited C/Java-like subset: concatenating
// token texts (comments and whitespace included) reproduces the input
// byte-for-byte. `goto` is not part of the subset and is rejected here.
//
// Errors (unterminated string/char/comment, goto) throw ExtractError with
// the file name and 1-based line.
std::vector<Token> tokenize(std::string_view source, const std::string& file = "<memory>");

bool is_keyword(std::string_view word);

// True for keywords that open a decision (if/while/for/...); used by the
// lexer only to keep the set in one place.
bool is_punctuation_char(char c);

}  // namespace aggmet
