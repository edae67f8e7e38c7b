#pragma once

#include <string_view>
#include <vector>

#include "vpy/ast.hpp"
#include "vpy/lexer.hpp"

namespace vpy {

// Builds the untyped module tree. Syntax violations raise ParseError naming
// the expected tokens; Python constructs outside the accepted subset raise
// SubsetError.
NodePtr parse(const std::vector<Token>& tokens);

NodePtr parse_source(std::string_view source);

}  // namespace vpy
