#include "vpy/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace vpy {

namespace {

constexpr std::array keywords = {
    "False", "None", "True", "and", "def", "elif", "else", "for", "if", "in",
    "lambda", "nonlocal", "not", "or", "pass", "print", "return", "while",
};

constexpr std::array unsupported_keywords = {
    "as", "assert", "async", "await", "break", "class", "continue", "del",
    "except", "finally", "from", "global", "import", "is", "raise", "try",
    "with", "yield",
};

// Longest first so that maximal munch works by linear scan.
constexpr std::array operators = {
    "**=", "//=", ">>=", "<<=",
    "**", "//", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "->",
    "<<", ">>", "&=", "|=", "^=",
    "+", "-", "*", "/", "%", "<", ">", "=", "(", ")", "[", "]", "{", "}",
    ",", ":", ".", "&", "|", "^", "~", "@", ";",
};

bool valid_utf8(std::string_view s, size_t& bad_at)
{
    size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        int extra = 0;
        if (c < 0x80) extra = 0;
        else if ((c & 0xE0) == 0xC0 && c >= 0xC2) extra = 1;
        else if ((c & 0xF0) == 0xE0) extra = 2;
        else if ((c & 0xF8) == 0xF0 && c <= 0xF4) extra = 3;
        else { bad_at = i; return false; }
        for (int k = 1; k <= extra; ++k) {
            if (i + k >= s.size() || (static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
                bad_at = i;
                return false;
            }
        }
        i += extra + 1;
    }
    return true;
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : m_src(src) {}

    std::vector<Token> run();

private:
    char peek(size_t ahead = 0) const
    {
        return m_pos + ahead < m_src.size() ? m_src[m_pos + ahead] : '\0';
    }
    bool at_end() const { return m_pos >= m_src.size(); }
    SourceLoc here() const { return {m_line, m_col}; }
    void advance(size_t n = 1)
    {
        for (size_t k = 0; k < n && m_pos < m_src.size(); ++k) {
            if (m_src[m_pos] == '\n') {
                ++m_line;
                m_col = 1;
            } else {
                ++m_col;
            }
            ++m_pos;
        }
    }
    void push(TokenKind kind, std::string lexeme, SourceLoc loc)
    {
        m_tokens.push_back({kind, std::move(lexeme), loc});
    }

    void handle_indentation();
    void scan_number();
    void scan_string();
    void scan_name();
    void scan_operator();

    std::string_view m_src;
    size_t m_pos = 0;
    int m_line = 1;
    int m_col = 1;
    int m_depth = 0;  // bracket nesting
    bool m_line_start = true;
    bool m_line_has_tokens = false;
    std::vector<int> m_indents{0};
    std::vector<Token> m_tokens;
};

void Lexer::handle_indentation()
{
    // Measure leading spaces of a logical line; skip blank and comment-only lines.
    while (true) {
        size_t width = 0;
        SourceLoc start = here();
        while (peek() == ' ' || peek() == '\t') {
            if (peek() == '\t')
                fail(ErrorKind::Lex, here(), "tab in indentation; indent with spaces only");
            ++width;
            advance();
        }
        if (peek() == '\r' && peek(1) == '\n')
            advance();
        if (peek() == '\n') {
            advance();
            continue;
        }
        if (peek() == '#') {
            while (!at_end() && peek() != '\n')
                advance();
            if (!at_end())
                advance();
            continue;
        }
        if (at_end())
            return;

        int w = static_cast<int>(width);
        if (w > m_indents.back()) {
            m_indents.push_back(w);
            push(TokenKind::Indent, "", start);
        } else {
            while (w < m_indents.back()) {
                m_indents.pop_back();
                push(TokenKind::Dedent, "", here());
            }
            if (w != m_indents.back())
                fail(ErrorKind::Lex, here(), "inconsistent dedent");
        }
        return;
    }
}

void Lexer::scan_number()
{
    SourceLoc loc = here();
    size_t start = m_pos;
    bool real = false;
    while (std::isdigit(static_cast<unsigned char>(peek())))
        advance();
    if (peek() == '.' && !std::isalpha(static_cast<unsigned char>(peek(1))) ) {
        real = true;
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek())))
            advance();
    }
    if (peek() == 'e' || peek() == 'E') {
        size_t look = 1;
        if (peek(1) == '+' || peek(1) == '-')
            look = 2;
        if (std::isdigit(static_cast<unsigned char>(peek(look)))) {
            real = true;
            advance(look);
            while (std::isdigit(static_cast<unsigned char>(peek())))
                advance();
        } else {
            fail(ErrorKind::Lex, here(), "malformed exponent in numeric literal");
        }
    }
    std::string text(m_src.substr(start, m_pos - start));
    if (peek() == 'j' || peek() == 'J') {
        advance();
        push(TokenKind::ImagLit, text, loc);
        return;
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
        fail(ErrorKind::Lex, here(), "invalid character in numeric literal");
    push(real ? TokenKind::RealLit : TokenKind::IntLit, text, loc);
}

void Lexer::scan_string()
{
    SourceLoc loc = here();
    char quote = peek();
    advance();
    std::string value;
    while (true) {
        if (at_end() || peek() == '\n')
            fail(ErrorKind::Lex, loc, "unterminated string literal");
        char c = peek();
        if (c == quote) {
            advance();
            break;
        }
        if (c == '\\') {
            char e = peek(1);
            advance(2);
            switch (e) {
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case 'r': value += '\r'; break;
            case '0': value += '\0'; break;
            case '\\': value += '\\'; break;
            case '\'': value += '\''; break;
            case '"': value += '"'; break;
            case '\n': break;  // escaped newline joins lines
            case 'x': {
                auto hex = [](char h) {
                    if (h >= '0' && h <= '9') return h - '0';
                    if (h >= 'a' && h <= 'f') return h - 'a' + 10;
                    if (h >= 'A' && h <= 'F') return h - 'A' + 10;
                    return -1;
                };
                int hi = hex(peek()), lo = hex(peek(1));
                if (hi < 0 || lo < 0)
                    fail(ErrorKind::Lex, here(), "malformed \\x escape");
                value += static_cast<char>(hi * 16 + lo);
                advance(2);
                break;
            }
            default:
                fail(ErrorKind::Lex, here(), std::string("unknown escape sequence \\") + e);
            }
            continue;
        }
        value += c;
        advance();
    }
    push(TokenKind::StrLit, std::move(value), loc);
}

void Lexer::scan_name()
{
    SourceLoc loc = here();
    size_t start = m_pos;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
        advance();
    std::string word(m_src.substr(start, m_pos - start));
    bool kw = is_keyword(word) || is_unsupported_keyword(word);
    push(kw ? TokenKind::Keyword : TokenKind::Name, std::move(word), loc);
}

void Lexer::scan_operator()
{
    SourceLoc loc = here();
    for (std::string_view op : operators) {
        if (m_src.substr(m_pos, op.size()) == op) {
            advance(op.size());
            if (op == "(" || op == "[" || op == "{")
                ++m_depth;
            else if ((op == ")" || op == "]" || op == "}") && m_depth > 0)
                --m_depth;
            push(TokenKind::Op, std::string(op), loc);
            return;
        }
    }
    auto c = static_cast<unsigned char>(peek());
    std::string shown = c >= 0x20 && c < 0x7F ? std::string(1, static_cast<char>(c))
                                              : "\\x" + std::to_string(c);
    fail(ErrorKind::Lex, loc, "unexpected character '" + shown + "'");
}

std::vector<Token> Lexer::run()
{
    size_t bad = 0;
    if (!valid_utf8(m_src, bad)) {
        // Locate the offending byte for the error position.
        SourceLoc loc{1, 1};
        for (size_t i = 0; i < bad; ++i) {
            if (m_src[i] == '\n') {
                ++loc.line;
                loc.col = 1;
            } else {
                ++loc.col;
            }
        }
        fail(ErrorKind::Lex, loc, "source is not valid UTF-8");
    }

    while (true) {
        if (m_line_start) {
            handle_indentation();
            m_line_start = false;
            m_line_has_tokens = false;
        }
        if (at_end())
            break;

        char c = peek();
        if (c == ' ') {
            advance();
        } else if (c == '\t') {
            fail(ErrorKind::Lex, here(), "tab character; use spaces");
        } else if (c == '#') {
            while (!at_end() && peek() != '\n')
                advance();
        } else if (c == '\r' && peek(1) == '\n') {
            advance();
        } else if (c == '\n') {
            if (m_depth == 0 && m_line_has_tokens)
                push(TokenKind::Newline, "", here());
            advance();
            m_line_start = m_depth == 0;
        } else if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
            advance(peek(1) == '\r' ? 3 : 2);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            scan_number();
            m_line_has_tokens = true;
        } else if (c == '"' || c == '\'') {
            scan_string();
            m_line_has_tokens = true;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            scan_name();
            m_line_has_tokens = true;
        } else {
            scan_operator();
            m_line_has_tokens = true;
        }
    }

    // With brackets still open the parser reports the imbalance at EOF.
    if (m_depth == 0 && m_line_has_tokens &&
        (m_tokens.empty() || m_tokens.back().kind != TokenKind::Newline))
        push(TokenKind::Newline, "", here());
    while (m_indents.size() > 1) {
        m_indents.pop_back();
        push(TokenKind::Dedent, "", here());
    }
    push(TokenKind::Eof, "", here());
    return std::move(m_tokens);
}

}  // namespace

std::string_view token_kind_name(TokenKind kind)
{
    switch (kind) {
    case TokenKind::Name: return "NAME";
    case TokenKind::IntLit: return "INT_LIT";
    case TokenKind::RealLit: return "REAL_LIT";
    case TokenKind::StrLit: return "STR_LIT";
    case TokenKind::ImagLit: return "IMAG_LIT";
    case TokenKind::Keyword: return "KW";
    case TokenKind::Op: return "OP";
    case TokenKind::Newline: return "NEWLINE";
    case TokenKind::Indent: return "INDENT";
    case TokenKind::Dedent: return "DEDENT";
    case TokenKind::Eof: return "EOF";
    }
    return "?";
}

bool is_keyword(std::string_view word)
{
    return std::find(keywords.begin(), keywords.end(), word) != keywords.end();
}

bool is_unsupported_keyword(std::string_view word)
{
    return std::find(unsupported_keywords.begin(), unsupported_keywords.end(), word) !=
           unsupported_keywords.end();
}

std::vector<Token> tokenize(std::string_view source)
{
    return Lexer(source).run();
}

}  // namespace vpy
