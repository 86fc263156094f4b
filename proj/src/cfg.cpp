#include "aggmet/cfg.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "aggmet/error.hpp"

namespace aggmet {

namespace {

bool is_trivia(const Token& t) {
    return t.kind == TokenKind::Whitespace || t.kind == TokenKind::Comment;
}

bool text_is(const Token* t, const char* s) { return t->text == s; }

// ---------------------------------------------------------------------------
// Expression trees. Only the decision-bearing structure is modelled: ?: and
// the short-circuit operators. Everything else lands in leaves, which carry
// the call targets found in them.
// ---------------------------------------------------------------------------

struct ExprNode {
    enum class Kind { Leaf, Circuit, Ternary } kind = Kind::Leaf;
    std::vector<std::string> callees;  // Leaf
    std::vector<ExprNode> children;    // Leaf: embedded decision groups;
                                       // Circuit: {lhs, rhs}; Ternary: {c,t,e}
};

using TokStream = std::vector<const Token*>;

class ExprParser {
public:
    explicit ExprParser(const TokStream& toks) : toks_(toks) {}

    ExprNode parse(std::size_t lo, std::size_t hi) const {
        // ternary (right-associative, lowest precedence we care about)
        if (auto q = find_ternary(lo, hi)) {
            ExprNode n;
            n.kind = ExprNode::Kind::Ternary;
            n.children.push_back(parse(lo, q->first));
            n.children.push_back(parse(q->first + 1, q->second));
            n.children.push_back(parse(q->second + 1, hi));
            return n;
        }
        if (auto split = find_last_top_level(lo, hi, "||")) {
            return circuit(parse(lo, *split), parse(*split + 1, hi));
        }
        if (auto split = find_last_top_level(lo, hi, "&&")) {
            return circuit(parse(lo, *split), parse(*split + 1, hi));
        }
        return leaf(lo, hi);
    }

private:
    static ExprNode circuit(ExprNode lhs, ExprNode rhs) {
        ExprNode n;
        n.kind = ExprNode::Kind::Circuit;
        n.children.push_back(std::move(lhs));
        n.children.push_back(std::move(rhs));
        return n;
    }

    static int depth_delta(const Token* t) {
        if (t->text == "(" || t->text == "[" || t->text == "{") return 1;
        if (t->text == ")" || t->text == "]" || t->text == "}") return -1;
        return 0;
    }

    // First top-level '?' with a matching top-level ':' (a '?' without one is
    // a generics wildcard and stays in its leaf).
    std::optional<std::pair<std::size_t, std::size_t>> find_ternary(std::size_t lo,
                                                                    std::size_t hi) const {
        int depth = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            depth += depth_delta(toks_[i]);
            if (depth != 0) continue;
            if (!text_is(toks_[i], "?")) continue;
            int tern = 1;
            int d2 = 0;
            for (std::size_t j = i + 1; j < hi; ++j) {
                d2 += depth_delta(toks_[j]);
                if (d2 != 0) continue;
                if (text_is(toks_[j], "?")) ++tern;
                else if (text_is(toks_[j], ":") && --tern == 0)
                    return std::make_pair(i, j);
            }
            return std::nullopt;  // wildcard '?'
        }
        return std::nullopt;
    }

    std::optional<std::size_t> find_last_top_level(std::size_t lo, std::size_t hi,
                                                   const char* op) const {
        int depth = 0;
        std::optional<std::size_t> found;
        for (std::size_t i = lo; i < hi; ++i) {
            depth += depth_delta(toks_[i]);
            if (depth == 0 && text_is(toks_[i], op)) found = i;
        }
        return found;
    }

    ExprNode leaf(std::size_t lo, std::size_t hi) const {
        ExprNode n;
        scan_leaf(lo, hi, n);
        return n;
    }

    // Digs through nested groups. Parenthesized groups containing decisions
    // become child expressions; braced groups (lambda and anonymous-class
    // bodies) are scanned lexically, each decision marker becoming one
    // synthetic two-way child so the outcome count stays exact.
    void scan_leaf(std::size_t lo, std::size_t hi, ExprNode& out) const {
        for (std::size_t i = lo; i < hi; ++i) {
            const Token* t = toks_[i];
            if (t->kind == TokenKind::Identifier && i + 1 < hi && text_is(toks_[i + 1], "(")) {
                out.callees.push_back(t->text);
            }
            if (t->text == "(" || t->text == "[") {
                std::size_t close = matching_close(i, hi);
                if (has_top_level_decision(i + 1, close)) {
                    out.children.push_back(parse(i + 1, close));
                } else {
                    scan_leaf(i + 1, close, out);
                }
                i = close;
            } else if (t->text == "{") {
                std::size_t close = matching_close(i, hi);
                int count = lexical_decision_count(i + 1, close);
                for (int k = 0; k < count; ++k) {
                    ExprNode branch;
                    branch.kind = ExprNode::Kind::Circuit;
                    branch.children.resize(2);
                    out.children.push_back(std::move(branch));
                }
                collect_callees(i + 1, close, out.callees);
                i = close;
            }
        }
    }

    std::size_t matching_close(std::size_t open, std::size_t hi) const {
        int depth = 0;
        for (std::size_t i = open; i < hi; ++i) {
            depth += depth_delta(toks_[i]);
            if (depth == 0) return i;
        }
        return hi;  // tolerated; enclosing parser validated balance already
    }

    bool has_top_level_decision(std::size_t lo, std::size_t hi) const {
        if (find_ternary(lo, hi)) return true;
        return find_last_top_level(lo, hi, "||").has_value() ||
               find_last_top_level(lo, hi, "&&").has_value();
    }

    // Flat count over every depth: if, while, for, case, catch, ?, &&, ||.
    // `do` is deliberately not counted (its `while` token is).
    int lexical_decision_count(std::size_t lo, std::size_t hi) const {
        int count = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::string& s = toks_[i]->text;
            if (toks_[i]->kind == TokenKind::Keyword) {
                if (s == "if" || s == "while" || s == "for" || s == "case" || s == "catch")
                    ++count;
            } else if (s == "?" || s == "&&" || s == "||") {
                ++count;
            }
        }
        return count;
    }

    void collect_callees(std::size_t lo, std::size_t hi, std::vector<std::string>& out) const {
        for (std::size_t i = lo; i < hi; ++i) {
            if (toks_[i]->kind == TokenKind::Identifier && i + 1 < hi &&
                text_is(toks_[i + 1], "("))
                out.push_back(toks_[i]->text);
        }
    }

    const TokStream& toks_;
};

// ---------------------------------------------------------------------------
// Statement parsing + graph building
// ---------------------------------------------------------------------------

class CfgBuilder {
public:
    CfgBuilder(const std::vector<Token>& tokens, const MethodSpan& span)
        : file_(span.file), expr_(toks_) {
        for (std::size_t i = span.body_begin + 1; i + 1 < span.body_end; ++i) {
            if (!is_trivia(tokens[i])) toks_.push_back(&tokens[i]);
        }
        body_line_ = span.start_line;
    }

    ControlFlowGraph build() {
        g_.nodes.resize(2);
        g_.nodes[ControlFlowGraph::kEntry].kind = NodeKind::Entry;
        g_.nodes[ControlFlowGraph::kExit].kind = NodeKind::Exit;
        frontier_ = {ControlFlowGraph::kEntry};
        while (pos_ < toks_.size()) parse_statement();
        for (int f : frontier_) edge(f, ControlFlowGraph::kExit);
        prune_unreachable();
        return std::move(g_);
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        int line = pos_ < toks_.size() ? toks_[pos_]->line : body_line_;
        throw ExtractError(file_, line, what);
    }

    const Token* peek(std::size_t ahead = 0) const {
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : nullptr;
    }
    bool at(const char* s) const { return peek() && peek()->text == s; }
    bool at_keyword(const char* s) const {
        return peek() && peek()->kind == TokenKind::Keyword && peek()->text == s;
    }
    const Token* take() {
        if (pos_ >= toks_.size()) fail("unexpected end of method body");
        return toks_[pos_++];
    }
    void expect(const char* s) {
        if (!at(s)) fail(std::string("expected '") + s + "'");
        ++pos_;
    }

    // --- graph primitives ---

    int add_node(NodeKind kind, DecisionKind decision = DecisionKind::None) {
        g_.nodes.push_back(CfgNode{kind, decision, {}});
        return static_cast<int>(g_.nodes.size()) - 1;
    }
    void edge(int a, int b) { g_.edges.emplace_back(a, b); }
    int node_from_frontier(NodeKind kind) {
        int n = add_node(kind);
        for (int f : frontier_) edge(f, n);
        frontier_ = {n};
        return n;
    }
    void make_predicate(int n, DecisionKind d) {
        g_.nodes[n].kind = NodeKind::Predicate;
        g_.nodes[n].decision = d;
        ++g_.decision_outcomes;
    }

    // --- expression lowering ---

    int lower(const ExprNode& e) {
        switch (e.kind) {
            case ExprNode::Kind::Leaf: {
                for (const ExprNode& child : e.children) lower(child);
                int b = node_from_frontier(NodeKind::Block);
                g_.nodes[b].callees = e.callees;
                return b;
            }
            case ExprNode::Kind::Circuit: {
                int p = lower(e.children[0]);
                make_predicate(p, DecisionKind::ShortCircuit);
                frontier_ = {p};
                int rhs = lower(e.children[1]);
                int join = add_node(NodeKind::Block);
                edge(rhs, join);
                edge(p, join);  // short-circuit skip
                frontier_ = {join};
                return join;
            }
            case ExprNode::Kind::Ternary: {
                int p = lower(e.children[0]);
                make_predicate(p, DecisionKind::Ternary);
                frontier_ = {p};
                int then_v = lower(e.children[1]);
                frontier_ = {p};
                int else_v = lower(e.children[2]);
                int join = add_node(NodeKind::Block);
                edge(then_v, join);
                edge(else_v, join);
                frontier_ = {join};
                return join;
            }
        }
        fail("unreachable");
    }

    // Lowers toks_[lo, hi) as one expression; returns its final node.
    int lower_range(std::size_t lo, std::size_t hi) { return lower(expr_.parse(lo, hi)); }

    // --- token-run helpers ---

    // Consumes a balanced '(' ... ')' starting at pos_; returns the content
    // range (exclusive of the parens).
    std::pair<std::size_t, std::size_t> paren_group() {
        expect("(");
        std::size_t lo = pos_;
        int depth = 1;
        while (pos_ < toks_.size()) {
            const Token* t = toks_[pos_];
            if (t->text == "(") ++depth;
            else if (t->text == ")" && --depth == 0) break;
            ++pos_;
        }
        if (pos_ >= toks_.size()) fail("unbalanced parentheses");
        std::size_t hi = pos_;
        ++pos_;  // ')'
        return {lo, hi};
    }

    // Consumes up to the next top-level ';' (exclusive); nested (), [], {}
    // are skipped wholesale.
    std::pair<std::size_t, std::size_t> statement_run() {
        std::size_t lo = pos_;
        int depth = 0;
        while (pos_ < toks_.size()) {
            const Token* t = toks_[pos_];
            if (t->text == "(" || t->text == "[" || t->text == "{") ++depth;
            else if (t->text == ")" || t->text == "]" || t->text == "}") --depth;
            else if (t->text == ";" && depth == 0) {
                std::size_t hi = pos_;
                ++pos_;  // ';'
                return {lo, hi};
            }
            if (depth < 0) fail("unexpected closing delimiter");
            ++pos_;
        }
        fail("missing ';'");
    }

    // --- statements ---

    struct LoopCtx {
        std::vector<int> breaks;
        std::vector<int> continues;
        bool accepts_continue;
    };

    void parse_statement() {
        const Token* t = peek();
        if (!t) return;
        if (t->text == ";") {
            ++pos_;
            return;
        }
        if (t->text == "{") {
            parse_block();
            return;
        }
        if (t->kind == TokenKind::Keyword) {
            const std::string& kw = t->text;
            if (kw == "if") return parse_if();
            if (kw == "while") return parse_while();
            if (kw == "do") return parse_do();
            if (kw == "for") return parse_for();
            if (kw == "switch") return parse_switch();
            if (kw == "try") return parse_try();
            if (kw == "return" || kw == "throw") return parse_exit_statement();
            if (kw == "break" || kw == "continue") return parse_jump();
            if (kw == "else") fail("'else' without matching 'if'");
            if (kw == "case" || kw == "default") fail("case label outside switch");
            if (kw == "catch" || kw == "finally") fail("'" + kw + "' without matching 'try'");
            if (kw == "synchronized" && peek(1) && peek(1)->text == "(") {
                ++pos_;
                auto [lo, hi] = paren_group();
                lower_range(lo, hi);
                parse_statement();
                return;
            }
            if (kw == "class" || kw == "interface" || kw == "enum") return parse_local_type();
        }
        // label: identifier ':' <statement>
        if (t->kind == TokenKind::Identifier && peek(1) && peek(1)->text == ":") {
            pos_ += 2;
            parse_statement();
            return;
        }
        auto [lo, hi] = statement_run();
        lower_range(lo, hi);
    }

    void parse_block() {
        expect("{");
        while (!at("}")) {
            if (pos_ >= toks_.size()) fail("unbalanced braces in method body");
            parse_statement();
        }
        ++pos_;
    }

    void parse_if() {
        ++pos_;
        auto [lo, hi] = paren_group();
        int p = lower_range(lo, hi);
        make_predicate(p, DecisionKind::If);
        frontier_ = {p};
        parse_statement();
        std::vector<int> after = frontier_;
        if (at_keyword("else")) {
            ++pos_;
            frontier_ = {p};
            parse_statement();
            after.insert(after.end(), frontier_.begin(), frontier_.end());
        } else {
            after.push_back(p);
        }
        frontier_ = std::move(after);
    }

    void parse_while() {
        ++pos_;
        auto [lo, hi] = paren_group();
        int cond_entry = static_cast<int>(g_.nodes.size());
        int p = lower_range(lo, hi);
        make_predicate(p, DecisionKind::While);
        loops_.push_back({{}, {}, true});
        frontier_ = {p};
        parse_statement();
        LoopCtx ctx = std::move(loops_.back());
        loops_.pop_back();
        for (int f : frontier_) edge(f, cond_entry);
        for (int c : ctx.continues) edge(c, cond_entry);
        frontier_ = {p};
        frontier_.insert(frontier_.end(), ctx.breaks.begin(), ctx.breaks.end());
    }

    void parse_do() {
        ++pos_;
        int body_entry = static_cast<int>(g_.nodes.size());
        loops_.push_back({{}, {}, true});
        parse_statement();
        LoopCtx ctx = std::move(loops_.back());
        loops_.pop_back();
        if (!at_keyword("while")) fail("'do' without matching 'while'");
        ++pos_;
        auto [lo, hi] = paren_group();
        expect(";");
        int cond_entry = static_cast<int>(g_.nodes.size());
        for (int c : ctx.continues) frontier_.push_back(c);
        int p = lower_range(lo, hi);
        make_predicate(p, DecisionKind::DoWhile);
        // back edge: to the body if it created nodes, else to the condition
        int back_target = body_entry < cond_entry ? body_entry : cond_entry;
        edge(p, back_target);
        frontier_ = {p};
        frontier_.insert(frontier_.end(), ctx.breaks.begin(), ctx.breaks.end());
    }

    void parse_for() {
        ++pos_;
        auto [lo, hi] = paren_group();
        // split on top-level ';' inside the parens
        std::vector<std::pair<std::size_t, std::size_t>> parts;
        {
            int depth = 0;
            std::size_t start = lo;
            for (std::size_t i = lo; i < hi; ++i) {
                const std::string& s = toks_[i]->text;
                if (s == "(" || s == "[" || s == "{") ++depth;
                else if (s == ")" || s == "]" || s == "}") --depth;
                else if (s == ";" && depth == 0) {
                    parts.emplace_back(start, i);
                    start = i + 1;
                }
            }
            parts.emplace_back(start, hi);
        }
        std::size_t cond_lo, cond_hi, upd_lo = 0, upd_hi = 0;
        bool has_update = false;
        if (parts.size() == 3) {
            if (parts[0].first != parts[0].second) lower_range(parts[0].first, parts[0].second);
            cond_lo = parts[1].first;
            cond_hi = parts[1].second;
            upd_lo = parts[2].first;
            upd_hi = parts[2].second;
            has_update = upd_lo != upd_hi;
        } else if (parts.size() == 1) {
            // enhanced for: the whole header is the controlling expression
            cond_lo = parts[0].first;
            cond_hi = parts[0].second;
        } else {
            fail("malformed 'for' header");
        }

        int cond_entry = static_cast<int>(g_.nodes.size());
        int p;
        if (cond_lo != cond_hi) {
            p = lower_range(cond_lo, cond_hi);
        } else {
            p = node_from_frontier(NodeKind::Block);  // for(;;) still decides
        }
        make_predicate(p, DecisionKind::For);

        loops_.push_back({{}, {}, true});
        frontier_ = {p};
        parse_statement();
        LoopCtx ctx = std::move(loops_.back());
        loops_.pop_back();

        for (int c : ctx.continues) frontier_.push_back(c);
        if (has_update) {
            int u = lower_range(upd_lo, upd_hi);
            edge(u, cond_entry);
        } else {
            for (int f : frontier_) edge(f, cond_entry);
        }
        frontier_ = {p};
        frontier_.insert(frontier_.end(), ctx.breaks.begin(), ctx.breaks.end());
    }

    void parse_switch() {
        ++pos_;
        auto [lo, hi] = paren_group();
        int dispatch = lower_range(lo, hi);
        g_.nodes[dispatch].kind = NodeKind::Predicate;
        g_.nodes[dispatch].decision = DecisionKind::Switch;
        expect("{");
        loops_.push_back({{}, {}, false});  // break target only
        std::vector<int> fallthrough;
        bool saw_default = false;
        bool saw_label = false;
        frontier_.clear();
        while (!at("}")) {
            if (pos_ >= toks_.size()) fail("unterminated switch body");
            if (at_keyword("case") || at_keyword("default")) {
                // label run starts a new group; previous group's exit falls through
                saw_label = true;
                std::vector<int> sources = std::move(fallthrough);
                fallthrough.clear();
                while (at_keyword("case") || at_keyword("default")) {
                    if (text_is(peek(), "default")) {
                        ++pos_;
                        saw_default = true;
                    } else {
                        ++pos_;
                        ++g_.decision_outcomes;
                        // label expression: skip to the ':'
                        int depth = 0;
                        while (pos_ < toks_.size()) {
                            const std::string& s = toks_[pos_]->text;
                            if (s == "(" || s == "[") ++depth;
                            else if (s == ")" || s == "]") --depth;
                            else if (s == ":" && depth == 0) break;
                            ++pos_;
                        }
                    }
                    expect(":");
                    sources.push_back(dispatch);
                }
                frontier_ = std::move(sources);
            } else if (!saw_label) {
                fail("statement before first case label");
            }
            parse_statement();
            fallthrough = frontier_;
            frontier_.clear();
        }
        ++pos_;  // '}'
        LoopCtx ctx = std::move(loops_.back());
        loops_.pop_back();
        frontier_ = std::move(fallthrough);
        frontier_.insert(frontier_.end(), ctx.breaks.begin(), ctx.breaks.end());
        if (!saw_default) frontier_.push_back(dispatch);
    }

    // The dispatch predicate sits at the try entry: control either runs the
    // body or diverts into one of the catches, so a body ending in `return`
    // cannot orphan its handlers.
    void parse_try() {
        ++pos_;
        if (at("(")) {  // try-with-resources
            auto [lo, hi] = paren_group();
            lower_range(lo, hi);
        }
        if (!at("{")) fail("expected '{' after 'try'");
        // peek past the body to know whether a dispatch node is needed
        const std::size_t body_start = pos_;
        {
            int depth = 0;
            while (pos_ < toks_.size()) {
                if (at("{")) ++depth;
                else if (at("}") && --depth == 0) {
                    ++pos_;
                    break;
                }
                ++pos_;
            }
        }
        const bool has_catch = at_keyword("catch");
        const std::size_t after_body = pos_;
        pos_ = body_start;

        std::vector<int> exits;
        int dispatch = -1;
        if (has_catch) {
            dispatch = node_from_frontier(NodeKind::Predicate);
            g_.nodes[dispatch].decision = DecisionKind::Catch;
        }
        parse_block();
        exits.insert(exits.end(), frontier_.begin(), frontier_.end());
        pos_ = after_body;
        while (at_keyword("catch")) {
            ++pos_;
            paren_group();  // parameter declaration carries no features
            if (!at("{")) fail("expected '{' after 'catch'");
            ++g_.decision_outcomes;
            frontier_ = {dispatch};
            parse_block();
            exits.insert(exits.end(), frontier_.begin(), frontier_.end());
        }
        frontier_ = std::move(exits);
        if (at_keyword("finally")) {
            ++pos_;
            if (!at("{")) fail("expected '{' after 'finally'");
            parse_block();
        }
    }

    void parse_exit_statement() {
        ++pos_;  // return | throw
        auto [lo, hi] = statement_run();
        if (lo != hi) lower_range(lo, hi);
        for (int f : frontier_) edge(f, ControlFlowGraph::kExit);
        frontier_.clear();
    }

    void parse_jump() {
        const bool is_break = peek()->text == "break";
        ++pos_;
        if (peek() && peek()->kind == TokenKind::Identifier) ++pos_;  // label
        expect(";");
        if (is_break) {
            if (loops_.empty()) fail("'break' outside loop or switch");
            auto& breaks = loops_.back().breaks;
            breaks.insert(breaks.end(), frontier_.begin(), frontier_.end());
        } else {
            LoopCtx* target = nullptr;
            for (auto it = loops_.rbegin(); it != loops_.rend(); ++it) {
                if (it->accepts_continue) {
                    target = &*it;
                    break;
                }
            }
            if (!target) fail("'continue' outside loop");
            target->continues.insert(target->continues.end(), frontier_.begin(),
                                     frontier_.end());
        }
        frontier_.clear();
    }

    // Local type declaration inside a method body: consume the braced body,
    // folding its contents into the enclosing method like a lambda body.
    void parse_local_type() {
        std::size_t lo = pos_;
        while (pos_ < toks_.size() && !at("{")) ++pos_;
        if (pos_ >= toks_.size()) fail("malformed local type declaration");
        int depth = 0;
        while (pos_ < toks_.size()) {
            if (at("{")) ++depth;
            else if (at("}")) {
                if (--depth == 0) {
                    ++pos_;
                    break;
                }
            }
            ++pos_;
        }
        if (at(";")) ++pos_;
        lower_range(lo, pos_);
    }

    void prune_unreachable() {
        std::vector<bool> reach(g_.nodes.size(), false);
        std::vector<int> stack = {ControlFlowGraph::kEntry};
        reach[ControlFlowGraph::kEntry] = true;
        reach[ControlFlowGraph::kExit] = true;  // exit always kept
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            for (const auto& [a, b] : g_.edges) {
                if (a == n && !reach[b]) {
                    reach[b] = true;
                    stack.push_back(b);
                }
            }
        }
        std::vector<int> remap(g_.nodes.size(), -1);
        std::vector<CfgNode> nodes;
        for (std::size_t i = 0; i < g_.nodes.size(); ++i) {
            if (reach[i]) {
                remap[i] = static_cast<int>(nodes.size());
                nodes.push_back(std::move(g_.nodes[i]));
            }
        }
        std::vector<std::pair<int, int>> edges;
        for (const auto& [a, b] : g_.edges) {
            if (reach[a] && reach[b]) edges.emplace_back(remap[a], remap[b]);
        }
        g_.nodes = std::move(nodes);
        g_.edges = std::move(edges);
    }

    std::string file_;
    TokStream toks_;
    ExprParser expr_;
    std::size_t pos_ = 0;
    int body_line_ = 0;
    ControlFlowGraph g_;
    std::vector<int> frontier_;
    std::vector<LoopCtx> loops_;
};

// ---------------------------------------------------------------------------
// Structured-prime reduction
// ---------------------------------------------------------------------------

struct RGraph {
    int entry = 0, exit = 1;
    std::vector<bool> alive;
    std::vector<bool> call;
    std::vector<std::map<int, int>> succ;  // node -> (target -> multiplicity)
    std::vector<std::map<int, int>> pred;

    explicit RGraph(const ControlFlowGraph& g) {
        alive.assign(g.nodes.size(), true);
        call.resize(g.nodes.size());
        succ.resize(g.nodes.size());
        pred.resize(g.nodes.size());
        for (std::size_t i = 0; i < g.nodes.size(); ++i) call[i] = g.nodes[i].has_call();
        for (const auto& [a, b] : g.edges) {
            ++succ[a][b];
            ++pred[b][a];
        }
    }

    int out_degree(int n) const {
        int d = 0;
        for (const auto& [t, m] : succ[n]) d += m;
        return d;
    }
    int in_degree(int n) const {
        int d = 0;
        for (const auto& [s, m] : pred[n]) d += m;
        return d;
    }

    void remove_edge(int a, int b, int count) {
        if ((succ[a][b] -= count) == 0) succ[a].erase(b);
        if ((pred[b][a] -= count) == 0) pred[b].erase(a);
    }

    void kill(int n) {
        alive[n] = false;
        succ[n].clear();
        pred[n].clear();
    }

    int nodes_alive() const {
        int c = 0;
        for (bool a : alive) c += a;
        return c;
    }
    int edges_alive() const {
        int c = 0;
        for (std::size_t i = 0; i < succ.size(); ++i)
            if (alive[i]) c += out_degree(static_cast<int>(i));
        return c;
    }
};

// One reduction step; true if anything changed. `call_sensitive` blocks any
// decision collapse whose prime contains a call site; plain sequence merges
// never remove a decision and always run.
bool reduce_step(RGraph& r, bool call_sensitive) {
    const int n = static_cast<int>(r.alive.size());

    // self-loop removal (empty-body loop)
    for (int a = 2; a < n; ++a) {
        if (!r.alive[a]) continue;
        auto it = r.succ[a].find(a);
        if (it == r.succ[a].end()) continue;
        if (call_sensitive && r.call[a]) continue;
        r.remove_edge(a, a, it->second);
        return true;
    }

    // parallel-edge contraction (decision with empty branches)
    for (int a = 2; a < n; ++a) {
        if (!r.alive[a]) continue;
        for (const auto& [b, m] : r.succ[a]) {
            if (b == a || m < 2) continue;
            if (call_sensitive && r.call[a]) continue;
            r.remove_edge(a, b, m - 1);
            return true;
        }
    }

    // sequence merge: a -> b where a is b's only way in and b is a's only
    // way out; never merges a loop pair and never touches entry/exit.
    for (int a = 2; a < n; ++a) {
        if (!r.alive[a] || r.out_degree(a) != 1) continue;
        int b = r.succ[a].begin()->first;
        if (b == a || b == r.exit || b == r.entry) continue;
        if (r.in_degree(b) != 1) continue;
        if (r.succ[b].count(a)) continue;  // two-node loop, not a sequence
        r.remove_edge(a, b, 1);
        r.call[a] = r.call[a] || r.call[b];
        auto targets = r.succ[b];
        for (const auto& [t, m] : targets) {
            r.remove_edge(b, t, m);
            r.succ[a][t] += m;
            r.pred[t][a] += m;
        }
        r.kill(b);
        return true;
    }

    // two-node loop (while / do-while)
    for (int p = 2; p < n; ++p) {
        if (!r.alive[p]) continue;
        if (r.succ[p].size() != 2) continue;
        for (const auto& [b, m1] : r.succ[p]) {
            if (b == p || b < 2 || !r.alive[b] || m1 != 1) continue;
            if (r.out_degree(b) != 1 || !r.succ[b].count(p)) continue;
            // p holds the exit edge; b is the pure loop companion
            int exit_target = -1;
            for (const auto& [t, mt] : r.succ[p])
                if (t != b) exit_target = mt == 1 ? t : -1;
            if (exit_target < 0 || exit_target == p) continue;
            const bool while_form = r.in_degree(b) == 1;                       // externals at p
            const bool do_form = r.in_degree(p) == 1 && r.pred[p].count(b);     // externals at b
            if (!while_form && !do_form) continue;
            if (call_sensitive && (r.call[p] || r.call[b])) continue;
            if (while_form) {
                r.remove_edge(p, b, 1);
                r.remove_edge(b, p, 1);
                r.call[p] = r.call[p] || r.call[b];
                r.kill(b);
            } else {
                // keep b (it receives the external edges)
                r.remove_edge(p, b, 1);
                r.remove_edge(b, p, 1);
                r.remove_edge(p, exit_target, 1);
                r.succ[b][exit_target] += 1;
                r.pred[exit_target][b] += 1;
                r.call[b] = r.call[b] || r.call[p];
                r.kill(p);
            }
            return true;
        }
    }

    // branch-join: dispatch p with branches that all reconverge at one node
    for (int p = 2; p < n; ++p) {
        if (!r.alive[p] || r.out_degree(p) < 2) continue;
        // candidate merge targets: direct successors and their successors
        std::vector<int> candidates;
        for (const auto& [s, m] : r.succ[p]) {
            candidates.push_back(s);
            for (const auto& [t, mt] : r.succ[s]) candidates.push_back(t);
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (int merge : candidates) {
            if (merge == p) continue;
            bool ok = true;
            bool any_branch = false;
            bool branch_call = false;
            for (const auto& [s, m] : r.succ[p]) {
                if (s == merge) continue;  // empty branch(es) straight to the join
                if (s == r.entry || s == r.exit || s == p) {
                    ok = false;
                    break;
                }
                // s must belong exclusively to this prime
                if (r.pred[s].size() != 1 || r.succ[s].size() != 1 ||
                    r.succ[s].begin()->first != merge || r.succ[s].begin()->second != 1) {
                    ok = false;
                    break;
                }
                any_branch = true;
                branch_call = branch_call || r.call[s];
            }
            if (!ok || !any_branch) continue;
            if (call_sensitive && (r.call[p] || branch_call)) continue;
            // collapse: p keeps a single edge to merge
            std::vector<int> branches;
            for (const auto& [s, m] : r.succ[p])
                if (s != merge) branches.push_back(s);
            for (int s : branches) {
                r.call[p] = r.call[p] || r.call[s];
                r.remove_edge(p, s, r.succ[p][s]);
                r.remove_edge(s, merge, 1);
                r.kill(s);
            }
            if (r.succ[p].count(merge)) r.remove_edge(p, merge, r.succ[p][merge]);
            r.succ[p][merge] += 1;
            r.pred[merge][p] += 1;
            return true;
        }
    }

    return false;
}

int reduce_and_count(const ControlFlowGraph& g, bool call_sensitive) {
    RGraph r(g);
    while (reduce_step(r, call_sensitive)) {
    }
    return r.edges_alive() - r.nodes_alive() + 2;
}

}  // namespace

ControlFlowGraph build_cfg(const std::vector<Token>& tokens, const MethodSpan& span) {
    return CfgBuilder(tokens, span).build();
}

int cyclomatic(const ControlFlowGraph& g) {
    return static_cast<int>(g.edges.size()) - static_cast<int>(g.nodes.size()) + 2;
}

int essential(const ControlFlowGraph& g) { return reduce_and_count(g, false); }

int design_complexity(const ControlFlowGraph& g) { return reduce_and_count(g, true); }

}  // namespace aggmet
