#pragma once

#include <string>
#include <vector>

#include "vpy/ast.hpp"
#include "vpy/options.hpp"

namespace vpy {

// Annotates every declaration, identifier and expression with a frozen type.
// A retype inserts a fresh Declaration before the assigning statement; a name
// never changes type at an existing declaration. Functions are typed from
// their first call site; functions that are never called lose their body and
// keep the type lambda[?].
void infer(AstNode& root, const CompileOptions& opts = {});

// Gives each identifier its (level, offset) slot from the binding recorded by
// infer. Identifiers that already carry a slot and no binding keep it.
void resolve_scopes(AstNode& root);

// Independent re-check of a slotted tree against the typing rules: every
// operand type known and compatible, every slot dense and consistent.
std::vector<Diagnostic> check_frozen(const AstNode& root);

struct SlotInfo {
    std::string name;
    FrozenType type;
    const AstNode* decl = nullptr;
};

struct FrameLayout {
    const AstNode* owner = nullptr;  // Module, FunctionDef or LambdaExpr
    int depth = 0;
    std::vector<SlotInfo> slots;  // indexed by offset
};

// Layouts in pre-order of their owners, module first.
std::vector<FrameLayout> frame_layouts(const AstNode& root);

}  // namespace vpy
