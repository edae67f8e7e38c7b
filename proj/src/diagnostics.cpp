#include "vpy/diagnostics.hpp"

namespace vpy {

std::string to_string(SourceLoc loc)
{
    return std::to_string(loc.line) + ":" + std::to_string(loc.col);
}

const char* error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Lex: return "LexError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Subset: return "SubsetError";
    case ErrorKind::AstFormat: return "AstFormatError";
    case ErrorKind::Type: return "TypeError";
    case ErrorKind::Name: return "NameError";
    case ErrorKind::Nonlocal: return "NonlocalError";
    case ErrorKind::IteratorMutation: return "IteratorMutationError";
    case ErrorKind::IteratorEscape: return "IteratorEscapeError";
    case ErrorKind::Internal: return "InternalError";
    case ErrorKind::UnsupportedBackend: return "UnsupportedBackend";
    case ErrorKind::Toolchain: return "ToolchainError";
    }
    return "Error";
}

static std::string format_error(ErrorKind kind, SourceLoc loc, const std::string& message)
{
    std::string out;
    if (loc.valid())
        out = to_string(loc) + ": ";
    out += error_kind_name(kind);
    out += ": ";
    out += message;
    return out;
}

CompileError::CompileError(ErrorKind kind, SourceLoc loc, std::string message)
    : std::runtime_error(format_error(kind, loc, message)),
      m_kind(kind), m_loc(loc), m_message(std::move(message))
{
}

void fail(ErrorKind kind, SourceLoc loc, std::string message)
{
    throw CompileError(kind, loc, std::move(message));
}

std::string to_string(const Diagnostic& d)
{
    if (!d.loc.valid())
        return d.message;
    return to_string(d.loc) + ": " + d.message;
}

}  // namespace vpy
