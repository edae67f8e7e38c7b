#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vpy/ast.hpp"
#include "vpy/options.hpp"

namespace vpy {

struct OlympusOptions {
    CompileOptions compile;
    // Default for OLYMPUS_HEAP_BYTES when the toolchain does not define it.
    size_t heap_bytes = 8388608;
};

// `ADDRL(o)` for level 0, `ADDRF(l,o)` otherwise.
std::string emit_address(SlotRef slot);

// Renders a typed, slotted, lowered module as one translation unit for the
// Olympus runtime. Deterministic: equal trees give byte-identical text.
std::string emit_olympus(const AstNode& root, const OlympusOptions& opts = {});

// The fixed mnemonic vocabulary shared with olympus.h.
const std::vector<std::string_view>& isa_mnemonics();

struct ScanFinding {
    int line = 0;
    std::string token;
};

// Lexical scan of an emitted unit. Outside preprocessor lines and string
// literals, every identifier must be an ISA mnemonic, a native loop index
// `$iter_<name>$` or a generated function name `F<k>_<name>`.
std::vector<ScanFinding> scan_emitted(std::string_view unit);

}  // namespace vpy
