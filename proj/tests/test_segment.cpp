#include <string>

#include "doctest.h"

#include "aggmet/error.hpp"
#include "aggmet/segment.hpp"
#include "aggmet/token.hpp"

using namespace aggmet;

namespace {

std::vector<MethodSpan> segment(const std::string& src) {
    auto toks = tokenize(src, "t.java");
    return segment_methods(toks, "t.java");
}

}  // namespace

TEST_CASE("two top-level methods yield two disjoint spans") {
    auto spans = segment("int one() {\n  return 1;\n}\n\nint two() {\n  return 2;\n}\n");
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].name == "one");
    CHECK(spans[1].name == "two");
    CHECK(spans[0].end_line < spans[1].start_line);
    CHECK(spans[0].start_line == 1);
    CHECK(spans[0].end_line == 3);
    CHECK(spans[1].start_line == 5);
    CHECK(spans[1].end_line == 7);
}

TEST_CASE("class with one method and one field gives one span") {
    // 10-line fixture, hand-segmented: only get() is a method
    const std::string src = "class Counter {\n"      // 1
                            "  private int count;\n"  // 2
                            "\n"                      // 3
                            "  int get() {\n"         // 4
                            "    return count;\n"     // 5
                            "  }\n"                   // 6
                            "\n"                      // 7
                            "  static int LIMIT = max(10, 20);\n"  // 8
                            "\n"                      // 9
                            "}\n";                    // 10
    auto spans = segment(src);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].name == "get");
    CHECK(spans[0].start_line == 4);
    CHECK(spans[0].end_line == 6);
    CHECK(count_loc(spans[0]) == 3);
}

TEST_CASE("interface with signature-only declarations has no methods") {
    auto spans = segment("interface Shape {\n  double area();\n  double perimeter();\n}\n");
    CHECK(spans.empty());
}

TEST_CASE("anonymous class body belongs to the enclosing method") {
    const std::string src =
        "class A {\n"
        "  void run() {\n"
        "    exec(new Runnable() { public void go() { poke(); } });\n"
        "  }\n"
        "}\n";
    auto spans = segment(src);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].name == "run");
    // lexical call targets inside the body, the anonymous class included
    CHECK(spans[0].callees == std::vector<std::string>{"exec", "poke"});
}

TEST_CASE("annotations with arguments do not confuse the matcher") {
    auto spans = segment("class A {\n  @Test(timeout = 5)\n  void m() { work(); }\n}\n");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].name == "m");
}

TEST_CASE("field initializer calling a function is not a method") {
    auto spans = segment("class A {\n  int x = init();\n  int[] a = {1, 2};\n}\n");
    CHECK(spans.empty());
}

TEST_CASE("anonymous class in a field initializer is not a method") {
    auto spans = segment("class A {\n  Runnable r = new Runnable() { };\n}\n");
    CHECK(spans.empty());
}

TEST_CASE("unbalanced braces report the line of the first imbalance") {
    try {
        segment("class A {\n  void f() {\n    if (x) {\n  }\n}\n");
        FAIL("expected ExtractError");
    } catch (const ExtractError& e) {
        CHECK(e.line() >= 1);
    }
    CHECK_THROWS_AS(segment("}\n"), ExtractError);
}

TEST_CASE("zero methods in an empty or declaration-only file") {
    CHECK(segment("").empty());
    CHECK(segment("int x;\n").empty());
}

TEST_CASE("constructor counts as a method") {
    auto spans = segment("class Point {\n  Point(int x) { store(x); }\n}\n");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].name == "Point");
}
