#include <map>
#include <random>
#include <set>
#include <string>

#include "doctest.h"

#include "aggmet/cfg.hpp"
#include "aggmet/error.hpp"
#include "aggmet/segment.hpp"
#include "aggmet/token.hpp"

using namespace aggmet;

namespace {

struct Built {
    std::vector<Token> tokens;
    MethodSpan span;
    ControlFlowGraph g;
};

Built build(const std::string& body) {
    Built b;
    const std::string src = "void f() {\n" + body + "\n}\n";
    b.tokens = tokenize(src, "t.java");
    auto spans = segment_methods(b.tokens, "t.java");
    REQUIRE(spans.size() == 1);
    b.span = spans[0];
    b.g = build_cfg(b.tokens, b.span);
    return b;
}

// Lexical decision-outcome oracle: one per if/while/for/catch/?/&&/|| and
// one per case label. `do` is not counted; its `while` token is.
int lexical_outcomes(const Built& b) {
    int count = 0;
    for (std::size_t i = b.span.body_begin + 1; i + 1 < b.span.body_end; ++i) {
        const Token& t = b.tokens[i];
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "if" || t.text == "while" || t.text == "for" || t.text == "case" ||
                t.text == "catch")
                ++count;
        } else if (t.text == "?" || t.text == "&&" || t.text == "||") {
            ++count;
        }
    }
    return count;
}

void check_invariants(const ControlFlowGraph& g) {
    // exactly one entry and one exit
    int entries = 0, exits = 0;
    for (const CfgNode& n : g.nodes) {
        entries += n.kind == NodeKind::Entry;
        exits += n.kind == NodeKind::Exit;
    }
    CHECK(entries == 1);
    CHECK(exits == 1);

    const int n = static_cast<int>(g.nodes.size());
    auto reachable = [&](int start, bool forward) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack = {start};
        seen[start] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [a, b] : g.edges) {
                const int from = forward ? a : b;
                const int to = forward ? b : a;
                if (from == v && !seen[to]) {
                    seen[to] = true;
                    stack.push_back(to);
                }
            }
        }
        return seen;
    };
    const auto from_entry = reachable(ControlFlowGraph::kEntry, true);
    const auto to_exit = reachable(ControlFlowGraph::kExit, false);
    for (int v = 0; v < n; ++v) {
        CHECK(from_entry[v]);
        CHECK(to_exit[v]);
    }
    CHECK(cyclomatic(g) >= 1);
}

// ---------------------------------------------------------------------------
// Independent prime-collapse oracle: same prime set, different code path,
// and the order of rule applications is randomized. Used both to verify
// essential()/design_complexity() and to show the fixpoint is
// order-independent.
// ---------------------------------------------------------------------------

struct OGraph {
    std::map<std::pair<int, int>, int> edges;
    std::set<int> nodes;
    std::map<int, bool> call;

    int v() const {
        int e = 0;
        for (const auto& [k, m] : edges) e += m;
        return e - static_cast<int>(nodes.size()) + 2;
    }
    int outdeg(int a) const {
        int d = 0;
        for (const auto& [k, m] : edges)
            if (k.first == a) d += m;
        return d;
    }
    int indeg(int a) const {
        int d = 0;
        for (const auto& [k, m] : edges)
            if (k.second == a) d += m;
        return d;
    }
    std::vector<int> succs(int a) const {
        std::vector<int> out;
        for (const auto& [k, m] : edges)
            if (k.first == a && m > 0) out.push_back(k.second);
        return out;
    }
    std::vector<int> preds(int a) const {
        std::vector<int> out;
        for (const auto& [k, m] : edges)
            if (k.second == a && m > 0) out.push_back(k.first);
        return out;
    }
    void drop(int a, int b, int m) {
        auto it = edges.find({a, b});
        it->second -= m;
        if (it->second <= 0) edges.erase(it);
    }
};

struct OracleMove {
    enum Kind { SelfLoop, Parallel, Sequence, Loop, Branch } kind;
    int a, b, merge;
};

std::vector<OracleMove> oracle_moves(const OGraph& g, bool call_sensitive) {
    std::vector<OracleMove> moves;
    auto callfree = [&](int x) { return !call_sensitive || !g.call.at(x); };
    for (int a : g.nodes) {
        if (a < 2) continue;
        if (g.edges.count({a, a}) && callfree(a))
            moves.push_back({OracleMove::SelfLoop, a, a, -1});
        for (int b : g.succs(a)) {
            if (b != a && g.edges.at({a, b}) >= 2 && callfree(a))
                moves.push_back({OracleMove::Parallel, a, b, -1});
            if (b != a && b >= 2 && g.outdeg(a) == 1 && g.indeg(b) == 1 &&
                !g.edges.count({b, a}))
                moves.push_back({OracleMove::Sequence, a, b, -1});
        }
        // loop: a holds the exit edge, b the companion
        if (g.succs(a).size() == 2) {
            for (int b : g.succs(a)) {
                if (b < 2 || b == a || g.edges.at({a, b}) != 1) continue;
                if (g.outdeg(b) != 1 || !g.edges.count({b, a})) continue;
                int other = -1;
                for (int t : g.succs(a))
                    if (t != b) other = t;
                if (other == a || g.edges.at({a, other}) != 1) continue;
                const bool while_form = g.indeg(b) == 1;
                const bool do_form = g.indeg(a) == 1;
                if ((while_form || do_form) && callfree(a) && callfree(b))
                    moves.push_back({OracleMove::Loop, a, b, other});
            }
        }
        // branch-join
        if (g.outdeg(a) >= 2) {
            std::set<int> candidates;
            for (int s : g.succs(a)) {
                candidates.insert(s);
                for (int t : g.succs(s)) candidates.insert(t);
            }
            for (int merge : candidates) {
                if (merge == a) continue;
                bool ok = true, any = false, called = !callfree(a);
                for (int s : g.succs(a)) {
                    if (s == merge) continue;
                    if (s < 2 || s == a || g.preds(s) != std::vector<int>{a} ||
                        g.succs(s) != std::vector<int>{merge} ||
                        g.edges.at({s, merge}) != 1) {
                        ok = false;
                        break;
                    }
                    any = true;
                    called = called || !callfree(s);
                }
                if (ok && any && !(call_sensitive && called))
                    moves.push_back({OracleMove::Branch, a, -1, merge});
            }
        }
    }
    return moves;
}

void oracle_apply(OGraph& g, const OracleMove& m) {
    switch (m.kind) {
        case OracleMove::SelfLoop:
            g.drop(m.a, m.a, g.edges.at({m.a, m.a}));
            break;
        case OracleMove::Parallel:
            g.drop(m.a, m.b, g.edges.at({m.a, m.b}) - 1);
            break;
        case OracleMove::Sequence: {
            g.drop(m.a, m.b, 1);
            for (int t : g.succs(m.b)) {
                const int mult = g.edges.at({m.b, t});
                g.drop(m.b, t, mult);
                g.edges[{m.a, t}] += mult;
            }
            g.call[m.a] = g.call[m.a] || g.call[m.b];
            g.nodes.erase(m.b);
            break;
        }
        case OracleMove::Loop: {
            g.drop(m.a, m.b, 1);
            g.drop(m.b, m.a, 1);
            const bool do_form = g.indeg(m.a) == 0;
            if (do_form) {
                g.drop(m.a, m.merge, 1);
                g.edges[{m.b, m.merge}] += 1;
                g.call[m.b] = g.call[m.b] || g.call[m.a];
                g.nodes.erase(m.a);
            } else {
                g.call[m.a] = g.call[m.a] || g.call[m.b];
                g.nodes.erase(m.b);
            }
            break;
        }
        case OracleMove::Branch: {
            for (int s : g.succs(m.a)) {
                if (s == m.merge) continue;
                g.call[m.a] = g.call[m.a] || g.call[s];
                g.drop(m.a, s, g.edges.at({m.a, s}));
                g.drop(s, m.merge, 1);
                g.nodes.erase(s);
            }
            if (g.edges.count({m.a, m.merge})) g.drop(m.a, m.merge, g.edges.at({m.a, m.merge}));
            g.edges[{m.a, m.merge}] += 1;
            break;
        }
    }
}

int oracle_reduce(const ControlFlowGraph& cfg, bool call_sensitive, unsigned seed) {
    OGraph g;
    for (int i = 0; i < static_cast<int>(cfg.nodes.size()); ++i) {
        g.nodes.insert(i);
        g.call[i] = cfg.nodes[i].has_call();
    }
    for (const auto& [a, b] : cfg.edges) g.edges[{a, b}] += 1;
    std::mt19937 rng(seed);
    while (true) {
        auto moves = oracle_moves(g, call_sensitive);
        if (moves.empty()) break;
        oracle_apply(g, moves[rng() % moves.size()]);
    }
    return g.v();
}

}  // namespace

TEST_CASE("straight-line body is a single path") {
    auto b = build("int x = 1;\nint y = x + 2;\nuse(y);");
    check_invariants(b.g);
    CHECK(cyclomatic(b.g) == 1);
    CHECK(cyclomatic(b.g) == 1 + b.g.decision_outcomes);
    CHECK(essential(b.g) == 1);
}

TEST_CASE("single if makes a diamond with two paths") {
    auto b = build("if (x > 0) { x = 1; }");
    check_invariants(b.g);
    CHECK(cyclomatic(b.g) == 2);
    CHECK(b.g.decision_outcomes == 1);
}

TEST_CASE("while containing if/else has cyclomatic 3") {
    auto b = build("while (i < n) {\n  if (a[i] > 0) { p++; } else { q++; }\n  i++;\n}");
    check_invariants(b.g);
    CHECK(cyclomatic(b.g) == 3);
    CHECK(cyclomatic(b.g) == 1 + lexical_outcomes(b));
    CHECK(essential(b.g) == 1);  // fully structured
}

TEST_CASE("switch with 3 case labels and default has cyclomatic 4") {
    auto b = build("switch (k) {\n"
                   "  case 1: a(); break;\n"
                   "  case 2: b(); break;\n"
                   "  case 3: c(); break;\n"
                   "  default: d(); break;\n"
                   "}");
    check_invariants(b.g);
    CHECK(cyclomatic(b.g) == 4);
    CHECK(essential(b.g) == 1);  // single-entry single-exit switch reduces
}

TEST_CASE("switch without default still counts its labels") {
    auto b = build("switch (k) { case 1: a(); break; case 2: b(); break; }");
    check_invariants(b.g);
    CHECK(cyclomatic(b.g) == 3);
    CHECK(essential(b.g) == 1);
}

TEST_CASE("every decision kind contributes one outcome") {
    auto b = build("for (int i = 0; i < n && !stop; i++) {\n"
                   "  do { t = t > 0 ? t - 1 : 0; } while (t > limit || wait());\n"
                   "  try { risky(); } catch (Error e) { log(e); }\n"
                   "}");
    check_invariants(b.g);
    // for, &&, do-while, ternary, ||, catch
    CHECK(lexical_outcomes(b) == 6);
    CHECK(cyclomatic(b.g) == 7);
    CHECK(cyclomatic(b.g) == 1 + b.g.decision_outcomes);
}

TEST_CASE("structured constructs all reduce to essential 1") {
    const char* bodies[] = {
        "if (a) { x(); } else { y(); }",
        "while (a) { if (b) { c(); } }",
        "do { a(); } while (b);",
        "for (i = 0; i < n; i++) { sum += i; }",
        "if (a && b || c) { f(); }",
        "x = a ? b : c;",
        "if (a) { return 1; } return 2;",
        "while (a) { }",
        "try { f(); } catch (E e) { g(); } finally { h(); }",
    };
    for (const char* body : bodies) {
        CAPTURE(body);
        auto b = build(body);
        check_invariants(b.g);
        CHECK(essential(b.g) == 1);
    }
}

TEST_CASE("break from the middle of a loop is unstructured") {
    auto b = build("while (c) {\n"
                   "  step();\n"
                   "  if (worn()) break;\n"
                   "  tail();\n"
                   "}\n"
                   "if (e) { finish(); }");
    check_invariants(b.g);
    CHECK(cyclomatic(b.g) == 4);
    const int ev = essential(b.g);
    // the loop knot stays; the trailing if reduces
    CHECK(ev == 3);
    for (unsigned seed = 1; seed <= 20; ++seed)
        CHECK(oracle_reduce(b.g, false, seed) == ev);
}

TEST_CASE("guard-style continue at the top of a loop body reduces away") {
    auto b = build("while (c) { if (skip()) continue; work(); }");
    check_invariants(b.g);
    CHECK(cyclomatic(b.g) == 3);
    CHECK(essential(b.g) == 1);  // equivalent to if (!skip()) work();
}

TEST_CASE("continue escaping a nested region is unstructured") {
    auto b = build("while (c) {\n"
                   "  if (p) {\n"
                   "    x();\n"
                   "    if (q) continue;\n"
                   "    y();\n"
                   "  }\n"
                   "  z();\n"
                   "}");
    check_invariants(b.g);
    const int ev = essential(b.g);
    CHECK(ev > 1);
    for (unsigned seed = 1; seed <= 20; ++seed)
        CHECK(oracle_reduce(b.g, false, seed) == ev);
}

TEST_CASE("essential equals the randomized-order oracle on mixed fixtures") {
    const char* bodies[] = {
        "if (a) { if (b) { f(); } } else { g(); }",
        "while (a) { if (b) break; }",
        "for (;;) { if (done()) break; tick(); }",
        "switch (k) { case 1: if (a) { f(); } break; case 2: g(); break; }",
        "do { if (a) continue; step(); } while (more());",
        "while (a) { if (b) return; }",
        "if (a) return; if (b) return; f();",
    };
    for (const char* body : bodies) {
        CAPTURE(body);
        auto b = build(body);
        check_invariants(b.g);
        const int ev = essential(b.g);
        const int iv = design_complexity(b.g);
        for (unsigned seed = 1; seed <= 10; ++seed) {
            CHECK(oracle_reduce(b.g, false, seed) == ev);
            CHECK(oracle_reduce(b.g, true, seed) == iv);
        }
        CHECK(1 <= ev);
        CHECK(ev <= cyclomatic(b.g));
        CHECK(1 <= iv);
        CHECK(iv <= cyclomatic(b.g));
    }
}

TEST_CASE("design complexity: method with no calls reduces to 1") {
    auto b = build("if (a) { x = 1; } else { x = 2; }\nwhile (x > 0) { x--; }");
    CHECK(design_complexity(b.g) == 1);
}

TEST_CASE("design complexity keeps a call-bearing decision") {
    auto b = build("if (p) { foo(); } else { bar(); }");
    CHECK(cyclomatic(b.g) == 2);
    CHECK(design_complexity(b.g) == 2);
    CHECK(essential(b.g) == 1);
}

TEST_CASE("call-free if after a call does not retain the decision") {
    auto b = build("foo();\nif (a) { b = 1; }");
    CHECK(cyclomatic(b.g) == 2);
    CHECK(design_complexity(b.g) == 1);
}

TEST_CASE("loop repeating a call is retained by design reduction") {
    auto b = build("while (more()) { consume(); }");
    CHECK(design_complexity(b.g) == 2);
}

TEST_CASE("else without if is malformed") {
    CHECK_THROWS_AS(build("else { x = 1; }"), ExtractError);
    CHECK_THROWS_AS(build("case 1: x = 1;"), ExtractError);
    CHECK_THROWS_AS(build("catch (E e) { }"), ExtractError);
    CHECK_THROWS_AS(build("break;"), ExtractError);
    CHECK_THROWS_AS(build("do { x(); } until (y);"), ExtractError);
}

TEST_CASE("lambda body decisions count toward the enclosing method") {
    auto b = build("items.forEach(x -> { if (x > 0) { keep(x); } });");
    check_invariants(b.g);
    CHECK(cyclomatic(b.g) == 2);
    CHECK(cyclomatic(b.g) == 1 + lexical_outcomes(b));
    CHECK(essential(b.g) == 1);
}

TEST_CASE("nodes record the calls made in them") {
    auto b = build("int v = load();\nif (check(v)) { store(v); }");
    std::set<std::string> seen;
    for (const CfgNode& n : b.g.nodes)
        for (const std::string& c : n.callees) seen.insert(c);
    CHECK(seen == std::set<std::string>{"load", "check", "store"});
}
