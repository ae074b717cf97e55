#pragma once

#include <string>
#include <vector>

#include "nilharm/grid.hpp"

namespace nilharm {

// complex arithmetic expression over named real variables: + - * / ^, unary minus, parentheses,
// constants pi and i, functions exp sin cos sqrt abs conj re im log
PointFunction compile_expression(const std::string& text, const std::vector<std::string>& variables);

}  // namespace nilharm
