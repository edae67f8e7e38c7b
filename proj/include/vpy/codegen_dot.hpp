#pragma once

#include <string>

#include "vpy/ast.hpp"

namespace vpy {

// Graphviz digraph of the tree: one node per AstNode in pre-order, labelled
// `kind [detail]` then the type and slot when present, and one edge per
// parent-child pair in child order.
std::string emit_dot(const AstNode& root);

}  // namespace vpy
