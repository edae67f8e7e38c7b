#pragma once

#include "vpy/ast.hpp"
#include "vpy/options.hpp"

namespace vpy {

// Turns every for-range induction variable into a native loop index: the
// loop, its target declaration and every read in the body are marked native,
// the variable leaves the frame and the remaining offsets are renumbered.
// Throws IteratorMutationError when the body assigns the variable and
// IteratorEscapeError when a nested function, `&` or id() needs its address.
void lower_for_range(AstNode& root);

// Folds arithmetic whose operands are all literals, and len() of a list
// literal whose elements are literals. Int results wrap to the configured width.
void fold_constants(AstNode& root, const CompileOptions& opts = {});

// Integer arithmetic shared by the folder, the oracle and tests.
int64_t int_pow(int64_t base, int64_t exp, int width);
int64_t floor_mod(int64_t a, int64_t b, int width);

}  // namespace vpy
