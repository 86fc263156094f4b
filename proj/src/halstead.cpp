#include "aggmet/halstead.hpp"

#include <cmath>
#include <unordered_set>

namespace aggmet {

HalsteadCounts halstead_counts(const std::vector<Token>& tokens, const MethodSpan& span) {
    HalsteadCounts c;
    std::unordered_set<std::string> operators;
    std::unordered_set<std::string> operands;

    for (std::size_t i = span.body_begin + 1; i + 1 < span.body_end; ++i) {
        const Token& t = tokens[i];
        switch (t.kind) {
            case TokenKind::Identifier:
            case TokenKind::Literal:
                ++c.total_operands;
                operands.insert(t.text);
                break;
            case TokenKind::Keyword:
                ++c.total_operators;
                operators.insert(t.text);
                break;
            case TokenKind::Operator:
            case TokenKind::Punctuation:
                if (t.text == ")" || t.text == "]" || t.text == "}") break;
                ++c.total_operators;
                operators.insert(t.text);
                break;
            case TokenKind::Comment:
            case TokenKind::Whitespace:
                break;
        }
    }

    // implicit method delimiter (the body braces), one occurrence
    ++c.total_operators;
    operators.insert("<method>");

    c.distinct_operators = static_cast<int>(operators.size());
    c.distinct_operands = static_cast<int>(operands.size());
    return c;
}

HalsteadValues halstead_values(const HalsteadCounts& c) {
    HalsteadValues v;
    v.length = c.total_operators + c.total_operands;
    v.volume = v.length * std::log2(static_cast<double>(c.distinct_operators) +
                                    static_cast<double>(c.distinct_operands));
    if (c.distinct_operands > 0) {
        v.difficulty = (c.distinct_operators / 2.0) *
                       (static_cast<double>(c.total_operands) / c.distinct_operands);
        v.level = v.difficulty > 0 ? 1.0 / v.difficulty : 1.0;
    } else {
        // operand-free body: keep every ratio finite
        v.difficulty = 0.0;
        v.level = 1.0;
    }
    v.content = v.level * v.volume;
    v.effort = v.difficulty * v.volume;
    v.time = v.effort / 18.0;
    v.bugs = v.volume / 3000.0;
    return v;
}

}  // namespace aggmet
