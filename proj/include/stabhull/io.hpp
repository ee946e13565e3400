#pragma once

#include <stdexcept>
#include <string>

#include "stabhull/types.hpp"

namespace stabhull {

struct ParseError : std::runtime_error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& what, int l, int c) : std::runtime_error(what), line(l), column(c) {}
};

/// Strict "stabhull/1" instance parser: unknown fields and non-finite
/// coordinates are rejected; parse failures carry line/column.
Instance parse_instance(const std::string& text);

std::string emit_instance(const Instance& inst);

/// Result serialization ("stabhull-result/1"); loading re-verifies every
/// witness against the polygon and its object.
std::string emit_result(const Solution& sol, const Instance& inst);
Solution parse_result(const std::string& text, const Instance& inst);

}  // namespace stabhull
