#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vpy/diagnostics.hpp"

namespace vpy {

enum class TokenKind {
    Name,
    IntLit,
    RealLit,
    StrLit,
    ImagLit,
    Keyword,
    Op,
    Newline,
    Indent,
    Dedent,
    Eof,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind;
    // Source spelling, except string literals which hold the decoded value
    // and imaginary literals which drop the trailing 'j'.
    std::string lexeme;
    SourceLoc loc;

    bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
    bool is_op(std::string_view text) const { return is(TokenKind::Op, text); }
    bool is_keyword(std::string_view text) const { return is(TokenKind::Keyword, text); }
};

bool is_keyword(std::string_view word);

// Python keywords outside the accepted subset; the parser turns them into
// SubsetError rather than a generic syntax error.
bool is_unsupported_keyword(std::string_view word);

std::vector<Token> tokenize(std::string_view source);

}  // namespace vpy
