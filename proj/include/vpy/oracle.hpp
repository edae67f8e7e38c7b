#pragma once

#include <string>
#include <string_view>

#include "vpy/ast.hpp"
#include "vpy/options.hpp"

namespace vpy {

// Exit statuses shared with the runtime's trap handler.
enum class Trap {
    None = 0,
    DivByZero = 3,
    IndexOutOfRange = 4,
    HeapExhausted = 5,
    Value = 6,
};

const char* trap_name(Trap t);

struct RunResult {
    std::string out;
    std::string err;
    int exit_code = 0;
};

struct OracleOptions {
    CompileOptions compile;
    // A single object larger than this traps HeapExhausted.
    size_t heap_bytes = 8388608;
};

// Executes a typed, slotted module, before or after loop lowering. Output is
// formatted exactly as the compiled program prints it.
RunResult interpret(const AstNode& root, const OracleOptions& opts = {});

}  // namespace vpy
