#pragma once

#include <string>
#include <vector>

#include "aggmet/token.hpp"

namespace aggmet {

// One extracted method. body_begin/body_end delimit the token slice of the
// body, '{' inclusive to '}' inclusive, as indices into the file's token
// stream. start_line is the line of the method name; end_line the line of
// the closing brace.
struct MethodSpan {
    std::string file;
    std::string name;
    int start_line = 0;
    int end_line = 0;
    std::size_t body_begin = 0;
    std::size_t body_end = 0;
    std::vector<std::string> callees;
};

// Finds method definitions: identifier + parameter list + braced body, at
// top level or directly inside a class/interface body. Bodies of lambdas
// and anonymous classes inside a method belong to that method. Signature-
// only declarations produce nothing. Throws ExtractError on unbalanced
// braces (line of the first imbalance).
std::vector<MethodSpan> segment_methods(const std::vector<Token>& tokens,
                                        const std::string& file);

// Physical lines of the span, blanks and comments included.
int count_loc(const MethodSpan& span);

}  // namespace aggmet
