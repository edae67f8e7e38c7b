#pragma once

#include <string>
#include <string_view>

namespace vpy {

// Python-compatible repr of a real: shortest digits that round-trip at the
// given width, exponent form outside [1e-4, 1e16).
std::string format_real(double v, bool real32 = false);

// Python-compatible complex repr: (a+bj), or bj when the real part is +0.
std::string format_complex(double re, double im, bool real32 = false);

// Python repr of a string (the quoting used inside printed lists).
std::string repr_string(std::string_view s);

// Double-quoted with backslash escapes; the lexer and the textual AST both read it back.
std::string quote_string(std::string_view s);

}  // namespace vpy
