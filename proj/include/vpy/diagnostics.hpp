#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpy {

struct SourceLoc {
    int line = 0;  // 1-based; 0 means unknown
    int col = 0;

    bool valid() const { return line > 0; }
    auto operator<=>(const SourceLoc&) const = default;
};

std::string to_string(SourceLoc loc);

enum class ErrorKind {
    Lex,
    Parse,
    Subset,
    AstFormat,
    Type,
    Name,
    Nonlocal,
    IteratorMutation,
    IteratorEscape,
    Internal,
    UnsupportedBackend,
    Toolchain,
};

const char* error_kind_name(ErrorKind kind);

// Every compiler phase reports failure through this one exception type; the
// kind distinguishes LexError, ParseError, TypeError and friends.
class CompileError : public std::runtime_error {
public:
    CompileError(ErrorKind kind, SourceLoc loc, std::string message);

    ErrorKind kind() const { return m_kind; }
    SourceLoc loc() const { return m_loc; }
    const std::string& message() const { return m_message; }

private:
    ErrorKind m_kind;
    SourceLoc m_loc;
    std::string m_message;
};

[[noreturn]] void fail(ErrorKind kind, SourceLoc loc, std::string message);

struct Diagnostic {
    SourceLoc loc;
    std::string message;
};

std::string to_string(const Diagnostic& d);

}  // namespace vpy
