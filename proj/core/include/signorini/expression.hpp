#pragma once

#include <string_view>

#include "signorini/assembly.hpp"

namespace signorini {

/// Compile a load expression over x and y into a callable. Supported:
/// numbers, x, y, pi, + - * / ^, unary minus, parentheses, sin, cos, exp.
/// Throws std::invalid_argument with a position message on a parse error.
LoadFunction compile_expression(std::string_view text);

}  // namespace signorini
