#include <string>

#include "doctest.h"

#include "aggmet/error.hpp"
#include "aggmet/token.hpp"

using namespace aggmet;

namespace {

std::string detokenize(const std::vector<Token>& tokens) {
    std::string out;
    for (const Token& t : tokens) out += t.text;
    return out;
}

std::vector<Token> meaningful(const std::vector<Token>& tokens) {
    std::vector<Token> out;
    for (const Token& t : tokens)
        if (t.kind != TokenKind::Whitespace && t.kind != TokenKind::Comment) out.push_back(t);
    return out;
}

}  // namespace

TEST_CASE("six lexemes of a=b+1;") {
    auto toks = tokenize("a=b+1;");
    REQUIRE(toks.size() == 6);
    CHECK(toks[0].kind == TokenKind::Identifier);
    CHECK(toks[0].text == "a");
    CHECK(toks[1].kind == TokenKind::Operator);
    CHECK(toks[1].text == "=");
    CHECK(toks[2].kind == TokenKind::Identifier);
    CHECK(toks[3].kind == TokenKind::Operator);
    CHECK(toks[3].text == "+");
    CHECK(toks[4].kind == TokenKind::Literal);
    CHECK(toks[4].text == "1");
    CHECK(toks[5].kind == TokenKind::Punctuation);
    CHECK(toks[5].text == ";");
}

TEST_CASE("empty input lexes to nothing") { CHECK(tokenize("").empty()); }

TEST_CASE("comments carry no keywords") {
    auto toks = tokenize("// if (x)");
    REQUIRE(toks.size() == 1);
    CHECK(toks[0].kind == TokenKind::Comment);
    CHECK(toks[0].text == "// if (x)");

    auto block = tokenize("/* while(true) { } */");
    REQUIRE(block.size() == 1);
    CHECK(block[0].kind == TokenKind::Comment);
}

TEST_CASE("string literals carry no control-flow keywords") {
    auto toks = meaningful(tokenize("s = \"if (x) while\";"));
    for (const Token& t : toks) CHECK(t.kind != TokenKind::Keyword);
}

TEST_CASE("lossless lexing across constructs") {
    const std::string src = "class A {\r\n"
                            "  // line comment with if\n"
                            "  int f(int x) { return x >= 2 ? x : -x; }\n"
                            "  /* block\n     comment */\n"
                            "  String s = \"he\\\"llo\";\n"
                            "  char c = '\\n';\n"
                            "  double d = 1.5e-3;\n"
                            "}\n";
    CHECK(detokenize(tokenize(src)) == src);
}

TEST_CASE("line numbers are 1-based and non-decreasing") {
    auto toks = tokenize("a\nb\n\nc /* x\ny */ d");
    CHECK(toks.front().line == 1);
    int prev = 1;
    for (const Token& t : toks) {
        CHECK(t.line >= prev);
        prev = t.line;
    }
    CHECK(toks.back().line == 5);
}

TEST_CASE("multi-character operators use maximal munch") {
    auto toks = meaningful(tokenize("a >>= b >>> c && d || e++"));
    std::vector<std::string> ops;
    for (const Token& t : toks)
        if (t.kind == TokenKind::Operator) ops.push_back(t.text);
    CHECK(ops == std::vector<std::string>{">>=", ">>>", "&&", "||", "++"});
}

TEST_CASE("unterminated string names the line") {
    try {
        tokenize("x = 1;\ny = \"abc", "f.java");
        FAIL("expected ExtractError");
    } catch (const ExtractError& e) {
        CHECK(e.line() == 2);
        CHECK(e.file() == "f.java");
    }
}

TEST_CASE("unterminated block comment is an error") {
    CHECK_THROWS_AS(tokenize("/* never closed"), ExtractError);
}

TEST_CASE("goto is rejected at lexing") {
    CHECK_THROWS_AS(tokenize("void f() { goto end; }"), ExtractError);
}

TEST_CASE("boolean and null literals are literals, not identifiers") {
    auto toks = meaningful(tokenize("x = true; y = null;"));
    CHECK(toks[2].kind == TokenKind::Literal);
    CHECK(toks[6].kind == TokenKind::Literal);
}
