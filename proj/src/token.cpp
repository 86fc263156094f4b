#include "aggmet/token.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

#include "aggmet/error.hpp"

namespace aggmet {

namespace {

const std::unordered_set<std::string_view>& keyword_set() {
    static const std::unordered_set<std::string_view> kw = {
        // Java-side
        "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
        "class", "const", "continue", "default", "do", "double", "else", "enum",
        "extends", "final", "finally", "float", "for", "if", "implements", "import",
        "instanceof", "int", "interface", "long", "native", "new", "package",
        "private", "protected", "public", "return", "short", "static", "strictfp",
        "super", "switch", "synchronized", "this", "throw", "throws", "transient",
        "try", "void", "volatile", "while",
        // C-side additions
        "extern", "inline", "register", "signed", "sizeof", "struct", "typedef",
        "union", "unsigned",
    };
    return kw;
}

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_cont(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

constexpr std::array<std::string_view, 25> kMultiOps = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "==", "!=", "<=", ">=",
    "&&",   "||",  "++",  "--",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=",
    "^=",   "<<",  ">>",
};

}  // namespace

bool is_keyword(std::string_view word) { return keyword_set().count(word) != 0; }

bool is_punctuation_char(char c) {
    switch (c) {
        case '{': case '}': case '(': case ')': case '[': case ']':
        case ';': case ',':
            return true;
        default:
            return false;
    }
}

std::vector<Token> tokenize(std::string_view src, const std::string& file) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;

    auto advance_lines = [&line](std::string_view text) {
        line += static_cast<int>(std::count(text.begin(), text.end(), '\n'));
    };
    auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
        std::string_view text = src.substr(begin, end - begin);
        out.push_back(Token{kind, std::string(text), line});
        advance_lines(text);
    };

    while (i < src.size()) {
        const char c = src[i];

        if (std::isspace(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isspace(static_cast<unsigned char>(src[j]))) ++j;
            push(TokenKind::Whitespace, i, j);
            i = j;
            continue;
        }

        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            std::size_t j = src.find('\n', i);
            if (j == std::string_view::npos) j = src.size();
            push(TokenKind::Comment, i, j);
            i = j;
            continue;
        }

        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            std::size_t j = src.find("*/", i + 2);
            if (j == std::string_view::npos)
                throw ExtractError(file, line, "unterminated block comment");
            push(TokenKind::Comment, i, j + 2);
            i = j + 2;
            continue;
        }

        if (c == '"' || c == '\'') {
            std::size_t j = i + 1;
            bool closed = false;
            while (j < src.size()) {
                if (src[j] == '\\' && j + 1 < src.size()) {
                    j += 2;
                    continue;
                }
                if (src[j] == c) {
                    closed = true;
                    ++j;
                    break;
                }
                if (src[j] == '\n') break;  // strings do not span lines
                ++j;
            }
            if (!closed)
                throw ExtractError(file, line, c == '"' ? "unterminated string literal"
                                                        : "unterminated character literal");
            push(TokenKind::Literal, i, j);
            i = j;
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size()) {
                const char d = src[j];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '.' || d == '_') {
                    ++j;
                    continue;
                }
                // exponent sign: 1.5e-3, 0x1p+4
                if ((d == '+' || d == '-') && j > i) {
                    const char prev = src[j - 1];
                    if ((prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P') &&
                        j + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                        ++j;
                        continue;
                    }
                }
                break;
            }
            push(TokenKind::Literal, i, j);
            i = j;
            continue;
        }

        if (is_ident_start(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && is_ident_cont(static_cast<unsigned char>(src[j]))) ++j;
            std::string_view word = src.substr(i, j - i);
            if (word == "goto")
                throw ExtractError(file, line, "goto is not part of the structured subset");
            if (word == "true" || word == "false" || word == "null") {
                push(TokenKind::Literal, i, j);
            } else if (is_keyword(word)) {
                push(TokenKind::Keyword, i, j);
            } else {
                push(TokenKind::Identifier, i, j);
            }
            i = j;
            continue;
        }

        if (is_punctuation_char(c)) {
            push(TokenKind::Punctuation, i, i + 1);
            ++i;
            continue;
        }

        // operator: longest match wins
        std::size_t matched = 1;
        for (std::string_view op : kMultiOps) {
            if (op.size() > matched && src.substr(i, op.size()) == op) matched = op.size();
        }
        push(TokenKind::Operator, i, i + matched);
        i += matched;
    }

    return out;
}

}  // namespace aggmet
