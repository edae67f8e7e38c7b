#include "vpy/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace vpy {

namespace {

// Shortest decimal digits and decimal exponent that read back to v.
void shortest_digits(double v, bool real32, std::string& digits, int& exp10)
{
    char buf[64];
    int max_prec = real32 ? 9 : 17;
    for (int p = 1; p <= max_prec; ++p) {
        std::snprintf(buf, sizeof buf, "%.*e", p - 1, v);
        bool same = real32 ? std::strtof(buf, nullptr) == static_cast<float>(v)
                           : std::strtod(buf, nullptr) == v;
        if (same || p == max_prec)
            break;
    }
    std::string s(buf);
    if (s[0] == '-')
        s.erase(0, 1);
    auto e = s.find('e');
    exp10 = std::atoi(s.c_str() + e + 1);
    digits.clear();
    for (size_t i = 0; i < e; ++i) {
        if (s[i] != '.')
            digits += s[i];
    }
    while (digits.size() > 1 && digits.back() == '0')
        digits.pop_back();
}

std::string repr(double v, bool real32, bool add_dot_zero)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v < 0 ? "-inf" : "inf";
    std::string sign = std::signbit(v) ? "-" : "";
    if (v == 0.0)
        return sign + (add_dot_zero ? "0.0" : "0");

    std::string digits;
    int exp10 = 0;
    shortest_digits(v, real32, digits, exp10);

    std::string out;
    if (exp10 < -4 || exp10 >= 16) {
        out = digits.substr(0, 1);
        if (digits.size() > 1)
            out += "." + digits.substr(1);
        char ebuf[16];
        std::snprintf(ebuf, sizeof ebuf, "e%c%02d", exp10 < 0 ? '-' : '+', std::abs(exp10));
        out += ebuf;
    } else if (exp10 < 0) {
        out = "0." + std::string(static_cast<size_t>(-exp10 - 1), '0') + digits;
    } else {
        size_t int_len = static_cast<size_t>(exp10) + 1;
        if (digits.size() <= int_len) {
            out = digits + std::string(int_len - digits.size(), '0');
            if (add_dot_zero)
                out += ".0";
        } else {
            out = digits.substr(0, int_len) + "." + digits.substr(int_len);
        }
    }
    return sign + out;
}

}  // namespace

std::string format_real(double v, bool real32)
{
    return repr(v, real32, true);
}

std::string format_complex(double re, double im, bool real32)
{
    std::string imag = repr(im, real32, false);
    if (re == 0.0 && !std::signbit(re))
        return imag + "j";
    if (imag[0] != '-')
        imag = "+" + imag;
    return "(" + repr(re, real32, false) + imag + "j)";
}

std::string repr_string(std::string_view s)
{
    bool has_single = s.find('\'') != std::string_view::npos;
    bool has_double = s.find('"') != std::string_view::npos;
    char quote = has_single && !has_double ? '"' : '\'';
    std::string out(1, quote);
    for (char ch : s) {
        auto c = static_cast<unsigned char>(ch);
        if (ch == quote || ch == '\\') {
            out += '\\';
            out += ch;
        } else if (ch == '\n') {
            out += "\\n";
        } else if (ch == '\t') {
            out += "\\t";
        } else if (ch == '\r') {
            out += "\\r";
        } else if (c < 0x20 || c == 0x7F) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\x%02x", c);
            out += buf;
        } else {
            out += ch;
        }
    }
    out += quote;
    return out;
}

std::string quote_string(std::string_view s)
{
    std::string out = "\"";
    for (char ch : s) {
        auto c = static_cast<unsigned char>(ch);
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (c < 0x20 || c == 0x7F) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\x%02x", c);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    out += '"';
    return out;
}

}  // namespace vpy
