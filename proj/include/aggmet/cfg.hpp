#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aggmet/segment.hpp"
#include "aggmet/token.hpp"

namespace aggmet {

enum class NodeKind { Entry, Exit, Block, Predicate };

enum class DecisionKind {
    None,
    If,
    While,
    DoWhile,
    For,
    Switch,
    Catch,
    Ternary,
    ShortCircuit,
};

struct CfgNode {
    NodeKind kind = NodeKind::Block;
    DecisionKind decision = DecisionKind::None;
    std::vector<std::string> callees;
    bool has_call() const { return !callees.empty(); }
};

// Per-method control-flow graph. Node 0 is the entry, node 1 the exit;
// parallel edges are meaningful (an empty decision branch).
struct ControlFlowGraph {
    std::vector<CfgNode> nodes;
    std::vector<std::pair<int, int>> edges;

    // Decision outcomes beyond the first at each predicate, accumulated
    // during construction: one per if/while/do/for/ternary/&&/||/catch and
    // one per case label. For dead-code-free methods this equals
    // cyclomatic() - 1.
    int decision_outcomes = 0;

    static constexpr int kEntry = 0;
    static constexpr int kExit = 1;
};

// Builds the CFG for a segmented method. Decision points: if, else-if,
// while, for, do, each case label, each catch, ?:, and each && / ||.
// Throws ExtractError on malformed control structure.
ControlFlowGraph build_cfg(const std::vector<Token>& tokens, const MethodSpan& span);

// E - N + 2.
int cyclomatic(const ControlFlowGraph& g);

// Cyclomatic complexity after collapsing structured primes (sequence,
// if-then, if-then-else, while, do-while, single-entry single-exit switch)
// to a fixpoint. Fully structured methods reduce to 1.
int essential(const ControlFlowGraph& g);

// Cyclomatic complexity of the design-reduced graph: only structured primes
// whose nodes (predicate included) carry no call sites are collapsed, so
// the decisions that remain are those with calls beneath them.
int design_complexity(const ControlFlowGraph& g);

}  // namespace aggmet
