#include "aggmet/segment.hpp"

#include <algorithm>

#include "aggmet/error.hpp"

namespace aggmet {

namespace {

bool is_trivia(const Token& t) {
    return t.kind == TokenKind::Whitespace || t.kind == TokenKind::Comment;
}

// Next non-trivia token index at or after i, or tokens.size().
std::size_t skip_trivia(const std::vector<Token>& tokens, std::size_t i) {
    while (i < tokens.size() && is_trivia(tokens[i])) ++i;
    return i;
}

bool is_text(const Token& t, const char* s) { return t.text == s; }

// Collects call targets inside [begin, end): identifiers directly followed
// by '('. Keywords are already a separate kind, so control statements do
// not register.
std::vector<std::string> collect_callees(const std::vector<Token>& tokens,
                                         std::size_t begin, std::size_t end) {
    std::vector<std::string> callees;
    for (std::size_t i = begin; i < end; ++i) {
        if (tokens[i].kind != TokenKind::Identifier) continue;
        std::size_t j = skip_trivia(tokens, i + 1);
        if (j < end && is_text(tokens[j], "(")) callees.push_back(tokens[i].text);
    }
    std::sort(callees.begin(), callees.end());
    callees.erase(std::unique(callees.begin(), callees.end()), callees.end());
    return callees;
}

}  // namespace

std::vector<MethodSpan> segment_methods(const std::vector<Token>& tokens,
                                        const std::string& file) {
    std::vector<MethodSpan> spans;
    std::vector<int> open_brace_lines;  // stack of unmatched '{' lines

    // Matches identifier '(' ... ')' [identifier|keyword|','|'.']* '{'
    // starting at the identifier index i. Returns the index of the body '{'
    // or npos.
    auto match_method_header = [&](std::size_t i) -> std::size_t {
        std::size_t j = skip_trivia(tokens, i + 1);
        if (j >= tokens.size() || !is_text(tokens[j], "(")) return std::string::npos;
        int paren_depth = 0;
        for (; j < tokens.size(); ++j) {
            if (is_trivia(tokens[j])) continue;
            if (is_text(tokens[j], "(")) ++paren_depth;
            else if (is_text(tokens[j], ")")) {
                if (--paren_depth == 0) break;
            }
        }
        if (j >= tokens.size()) return std::string::npos;
        // between ')' and '{': throws clauses, modifiers, qualified names
        for (j = skip_trivia(tokens, j + 1); j < tokens.size(); j = skip_trivia(tokens, j + 1)) {
            const Token& t = tokens[j];
            if (is_text(t, "{")) return j;
            const bool allowed = t.kind == TokenKind::Identifier ||
                                 t.kind == TokenKind::Keyword ||
                                 is_text(t, ",") || is_text(t, ".");
            if (!allowed) return std::string::npos;
        }
        return std::string::npos;
    };

    std::size_t i = 0;
    int depth = 0;
    const Token* prev = nullptr;  // last non-trivia token seen
    while (i < tokens.size()) {
        const Token& t = tokens[i];
        if (is_trivia(t)) {
            ++i;
            continue;
        }
        // `new Foo() {...}` and `expr.foo() {...}` are expressions, not
        // method definitions.
        const bool after_new_or_dot =
            prev != nullptr && (is_text(*prev, "new") || is_text(*prev, "."));
        if (t.kind == TokenKind::Identifier && depth <= 1 && !after_new_or_dot) {
            std::size_t body_open = match_method_header(i);
            if (body_open != std::string::npos) {
                MethodSpan span;
                span.file = file;
                span.name = t.text;
                span.start_line = t.line;
                span.body_begin = body_open;
                // swallow the body, nested braces included
                int body_depth = 0;
                std::size_t j = body_open;
                for (; j < tokens.size(); ++j) {
                    if (is_text(tokens[j], "{")) ++body_depth;
                    else if (is_text(tokens[j], "}")) {
                        if (--body_depth == 0) break;
                    }
                }
                if (j >= tokens.size())
                    throw ExtractError(file, tokens[body_open].line,
                                       "unbalanced braces: method body never closes");
                span.body_end = j + 1;
                span.end_line = tokens[j].line;
                span.callees = collect_callees(tokens, body_open + 1, j);
                spans.push_back(std::move(span));
                prev = &tokens[j];
                i = j + 1;
                continue;
            }
        }
        if (is_text(t, "{")) {
            ++depth;
            open_brace_lines.push_back(t.line);
        } else if (is_text(t, "}")) {
            if (depth == 0)
                throw ExtractError(file, t.line, "unbalanced braces: unexpected '}'");
            --depth;
            open_brace_lines.pop_back();
        }
        prev = &t;
        ++i;
    }
    if (depth != 0)
        throw ExtractError(file, open_brace_lines.front(),
                           "unbalanced braces: '{' never closed");
    return spans;
}

int count_loc(const MethodSpan& span) { return span.end_line - span.start_line + 1; }

}  // namespace aggmet
