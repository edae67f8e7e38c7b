#pragma once

#include <string>
#include <string_view>

#include "vpy/ast.hpp"

namespace vpy {

// Canonical s-expression text for a tree (the .oast pipe format).
std::string serialize_ast(const AstNode& root);

// Inverse of serialize_ast. Throws CompileError(AstFormat) naming the line of
// the first offending form.
NodePtr deserialize_ast(std::string_view text);

}  // namespace vpy
