#pragma once

#include <vector>

#include "aggmet/segment.hpp"
#include "aggmet/token.hpp"

namespace aggmet {

struct HalsteadCounts {
    int distinct_operators = 0;  // n1
    int distinct_operands = 0;   // n2
    int total_operators = 0;     // N1
    int total_operands = 0;      // N2
};

struct HalsteadValues {
    double length = 0;      // N = N1 + N2
    double volume = 0;      // V = N * log2(n1 + n2)
    double level = 1;       // L = 1/D (1 when D = 0)
    double difficulty = 0;  // D = (n1/2) * (N2/n2), 0 when n2 = 0
    double content = 0;     // I = L * V
    double effort = 0;      // E = D * V
    double bugs = 0;        // B = V / 3000
    double time = 0;        // T = E / 18
};

// Counting rules, fixed and documented in the README: operands are
// identifiers and literals; operators are keywords plus every operator or
// punctuation token except ')', ']' and '}' (paired delimiters count once,
// via their opener), plus one implicit method delimiter standing in for the
// body braces. Counts cover the tokens strictly inside the body braces.
HalsteadCounts halstead_counts(const std::vector<Token>& tokens, const MethodSpan& span);

HalsteadValues halstead_values(const HalsteadCounts& c);

}  // namespace aggmet
