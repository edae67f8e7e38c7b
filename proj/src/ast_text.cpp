#include "vpy/ast_text.hpp"

#include <charconv>
#include <cstdlib>

#include "vpy/format.hpp"

namespace vpy {

namespace {

bool has_name_positional(NodeKind k)
{
    return k == NodeKind::Identifier || k == NodeKind::Declaration || k == NodeKind::FunctionDef ||
           k == NodeKind::Nonlocal;
}

bool always_typed(NodeKind k)
{
    return k == NodeKind::Identifier || k == NodeKind::Declaration || k == NodeKind::FunctionDef;
}

bool has_op(NodeKind k)
{
    return k == NodeKind::BinOp || k == NodeKind::UnOp || k == NodeKind::Compare || k == NodeKind::BoolOp;
}

std::string_view lit_tag(LitKind k)
{
    switch (k) {
    case LitKind::Int: return "int";
    case LitKind::Real: return "real";
    case LitKind::String: return "string";
    case LitKind::Bool: return "bool";
    case LitKind::Imag: return "imag";
    case LitKind::None: return "none";
    }
    return "none";
}

class Writer {
public:
    std::string out;

    void node(const AstNode& n, int indent)
    {
        out += '(';
        out += node_kind_name(n.kind);
        if (has_name_positional(n.kind))
            out += " " + quote_string(n.name);
        if (n.kind == NodeKind::Literal) {
            out += ' ';
            out += lit_tag(n.lit.kind);
            switch (n.lit.kind) {
            case LitKind::Int: out += " " + std::to_string(n.lit.ival); break;
            case LitKind::Real:
            case LitKind::Imag: out += " " + format_real(n.lit.rval); break;
            case LitKind::String: out += " " + quote_string(n.lit.sval); break;
            case LitKind::Bool: out += n.lit.bval ? " True" : " False"; break;
            case LitKind::None: break;
            }
        }
        if (is_statement(n.kind) && n.loc.valid())
            out += " :loc " + to_string(n.loc);
        if (always_typed(n.kind)) {
            out += " :type " + (n.type ? to_string(*n.type) : std::string("?"));
            out += " :slot " + (n.slot ? to_string(*n.slot) : std::string("?"));
        } else {
            if (n.type)
                out += " :type " + to_string(*n.type);
            if (n.slot)
                out += " :slot " + to_string(*n.slot);
        }
        if (n.native)
            out += " :native 1";
        if (has_op(n.kind))
            out += " :op " + n.op;
        if (n.kind == NodeKind::Attr || n.kind == NodeKind::AttrAssign)
            out += " :attr " + n.name;
        if (n.is_builtin_call())
            out += " :builtin " + n.name;
        if (n.is_function())
            out += " :params " + std::to_string(n.count);
        if (n.kind == NodeKind::If)
            out += " :then " + std::to_string(n.count);
        for (auto& c : n.children) {
            if (is_statement(c->kind) || n.kind == NodeKind::Module) {
                out += '\n';
                out += std::string(static_cast<size_t>(indent + 1) * 2, ' ');
                node(*c, indent + 1);
            } else {
                out += ' ';
                node(*c, indent + 1);
            }
        }
        out += ')';
    }
};

// ---------------------------------------------------------------------------

struct Tok {
    enum Kind { Open, Close, Str, Atom, End } kind;
    std::string text;
    int line;
};

class Reader {
public:
    explicit Reader(std::string_view s) : m_s(s) { advance(); }

    NodePtr read_root()
    {
        auto root = read_form();
        if (root->kind != NodeKind::Module)
            error(m_form_line, "top-level form must be a module");
        if (m_tok.kind != Tok::End)
            error(m_tok.line, "trailing text after the module form");
        return root;
    }

private:
    [[noreturn]] void error(int line, const std::string& msg)
    {
        fail(ErrorKind::AstFormat, SourceLoc{line, 1}, msg);
    }

    void advance()
    {
        while (m_pos < m_s.size()) {
            char c = m_s[m_pos];
            if (c == '\n') {
                ++m_line;
                ++m_pos;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++m_pos;
            } else if (c == '#') {
                while (m_pos < m_s.size() && m_s[m_pos] != '\n')
                    ++m_pos;
            } else {
                break;
            }
        }
        if (m_pos >= m_s.size()) {
            m_tok = {Tok::End, "", m_line};
            return;
        }
        char c = m_s[m_pos];
        if (c == '(' || c == ')') {
            m_tok = {c == '(' ? Tok::Open : Tok::Close, std::string(1, c), m_line};
            ++m_pos;
            return;
        }
        if (c == '"') {
            int line = m_line;
            ++m_pos;
            std::string v;
            while (true) {
                if (m_pos >= m_s.size())
                    error(line, "unterminated string");
                char ch = m_s[m_pos++];
                if (ch == '"')
                    break;
                if (ch == '\n')
                    ++m_line;
                if (ch != '\\') {
                    v += ch;
                    continue;
                }
                if (m_pos >= m_s.size())
                    error(line, "unterminated string");
                char e = m_s[m_pos++];
                switch (e) {
                case 'n': v += '\n'; break;
                case 't': v += '\t'; break;
                case 'r': v += '\r'; break;
                case '0': v += '\0'; break;
                case '\\': v += '\\'; break;
                case '"': v += '"'; break;
                case '\'': v += '\''; break;
                case 'x': {
                    unsigned value = 0;
                    auto r = std::from_chars(m_s.data() + m_pos,
                                             m_s.data() + std::min(m_pos + 2, m_s.size()), value, 16);
                    if (r.ptr != m_s.data() + m_pos + 2)
                        error(line, "malformed \\x escape");
                    m_pos += 2;
                    v += static_cast<char>(value);
                    break;
                }
                default: error(line, std::string("unknown escape \\") + e);
                }
            }
            m_tok = {Tok::Str, std::move(v), line};
            return;
        }
        size_t start = m_pos;
        while (m_pos < m_s.size()) {
            char ch = m_s[m_pos];
            if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '(' || ch == ')' ||
                ch == '"' || ch == '#')
                break;
            ++m_pos;
        }
        m_tok = {Tok::Atom, std::string(m_s.substr(start, m_pos - start)), m_line};
    }

    Tok take()
    {
        Tok t = m_tok;
        advance();
        return t;
    }

    std::string expect_atom(const char* what)
    {
        if (m_tok.kind != Tok::Atom)
            error(m_tok.line, std::string("expected ") + what);
        return take().text;
    }

    static bool parse_int(const std::string& s, int64_t& v)
    {
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        return r.ec == std::errc{} && r.ptr == s.data() + s.size();
    }

    static bool parse_real(const std::string& s, double& v)
    {
        if (s.empty())
            return false;
        char* end = nullptr;
        v = std::strtod(s.c_str(), &end);
        return end == s.c_str() + s.size();
    }

    NodePtr read_form()
    {
        if (m_tok.kind != Tok::Open)
            error(m_tok.line, "expected '('");
        int line = m_tok.line;
        m_form_line = line;
        advance();
        std::string kind_name = expect_atom("node kind");
        auto kind = node_kind_from_name(kind_name);
        if (!kind)
            error(line, "unknown node kind '" + kind_name + "'");
        auto n = make_node(*kind);

        if (has_name_positional(*kind)) {
            if (m_tok.kind != Tok::Str)
                error(m_tok.line, "expected quoted name for " + kind_name);
            n->name = take().text;
        }
        if (*kind == NodeKind::Literal)
            read_literal(*n, line);

        bool saw_builtin = false;
        while (m_tok.kind == Tok::Atom && !m_tok.text.empty() && m_tok.text[0] == ':') {
            std::string attr = take().text.substr(1);
            int aline = m_tok.line;
            std::string value;
            if (m_tok.kind == Tok::Atom || m_tok.kind == Tok::Str)
                value = take().text;
            else
                error(aline, "missing value for :" + attr);
            if (attr == "loc") {
                auto colon = value.find(':');
                int64_t l = 0, c = 0;
                if (colon == std::string::npos || !parse_int(value.substr(0, colon), l) ||
                    !parse_int(value.substr(colon + 1), c) || l < 1 || c < 1)
                    error(aline, "malformed :loc '" + value + "'");
                n->loc = SourceLoc{static_cast<int>(l), static_cast<int>(c)};
            } else if (attr == "type") {
                if (value != "?") {
                    auto t = parse_type(value);
                    if (!t)
                        error(aline, "malformed :type '" + value + "'");
                    n->type = *t;
                }
            } else if (attr == "slot") {
                if (value != "?") {
                    auto s = parse_slot(value);
                    if (!s)
                        error(aline, "malformed :slot '" + value + "'");
                    n->slot = *s;
                }
            } else if (attr == "native") {
                n->native = value == "1";
            } else if (attr == "op") {
                n->op = value;
            } else if (attr == "attr") {
                if (value != "real" && value != "imag")
                    error(aline, "bad :attr '" + value + "'");
                n->name = value;
            } else if (attr == "builtin") {
                if (!is_builtin_name(value))
                    error(aline, "unknown builtin '" + value + "'");
                n->name = value;
                saw_builtin = true;
            } else if (attr == "params" || attr == "then") {
                int64_t v = 0;
                if (!parse_int(value, v) || v < 0)
                    error(aline, "bad :" + attr + " '" + value + "'");
                n->count = static_cast<int>(v);
            } else {
                error(aline, "unknown attribute :" + attr);
            }
        }
        (void)saw_builtin;

        while (m_tok.kind == Tok::Open)
            n->children.push_back(read_form());
        if (m_tok.kind != Tok::Close)
            error(m_tok.line, "expected ')' to close " + kind_name);
        advance();
        validate(*n, line);
        return n;
    }

    void read_literal(AstNode& n, int line)
    {
        std::string tag = expect_atom("literal tag");
        Literal& l = n.lit;
        if (tag == "none") {
            l = Literal::none();
            return;
        }
        if (tag == "string") {
            if (m_tok.kind != Tok::Str)
                error(m_tok.line, "expected quoted string literal");
            l = Literal::of_string(take().text);
            return;
        }
        std::string v = expect_atom("literal value");
        if (tag == "int") {
            int64_t i = 0;
            if (!parse_int(v, i))
                error(line, "bad int literal '" + v + "'");
            l = Literal::of_int(i);
        } else if (tag == "real" || tag == "imag") {
            double d = 0;
            if (!parse_real(v, d))
                error(line, "bad real literal '" + v + "'");
            l = tag == "real" ? Literal::of_real(d) : Literal::of_imag(d);
        } else if (tag == "bool") {
            if (v != "True" && v != "False")
                error(line, "bad bool literal '" + v + "'");
            l = Literal::of_bool(v == "True");
        } else {
            error(line, "unknown literal tag '" + tag + "'");
        }
    }

    void validate(const AstNode& n, int line)
    {
        size_t nc = n.children.size();
        auto need = [&](bool ok, const char* what) {
            if (!ok)
                error(line, std::string(node_kind_name(n.kind)) + ": " + what);
        };
        auto kid = [&](size_t i) { return n.children[i]->kind; };
        switch (n.kind) {
        case NodeKind::Module:
            for (size_t i = 0; i < nc; ++i)
                need(is_statement(kid(i)), "children must be statements");
            break;
        case NodeKind::FunctionDef:
        case NodeKind::LambdaExpr:
            need(nc >= static_cast<size_t>(n.count), "fewer children than parameters");
            for (size_t i = 0; i < static_cast<size_t>(n.count); ++i)
                need(kid(i) == NodeKind::Declaration, "parameters must be declarations");
            // A lambda never called keeps no parameters and no body.
            if (n.kind == NodeKind::LambdaExpr)
                need(nc == static_cast<size_t>(n.count) + 1 || (nc == 0 && n.count == 0),
                     "lambda has exactly one body expression");
            break;
        case NodeKind::Declaration:
        case NodeKind::Identifier:
        case NodeKind::Nonlocal:
        case NodeKind::Pass:
        case NodeKind::Literal:
            need(nc == 0, "takes no children");
            break;
        case NodeKind::Assign:
        case NodeKind::AttrAssign:
            need(nc == 2 && kid(0) == NodeKind::Identifier, "expects (ident value)");
            break;
        case NodeKind::IndexAssign:
            need(nc == 3 && kid(0) == NodeKind::Identifier, "expects (ident index value)");
            break;
        case NodeKind::If:
            need(nc >= 1 && static_cast<size_t>(n.count) <= nc - 1, "bad :then count");
            break;
        case NodeKind::While:
            need(nc >= 1, "missing condition");
            break;
        case NodeKind::ForRange:
            need(nc >= 4 && kid(0) == NodeKind::Declaration, "expects (declaration start end step body*)");
            break;
        case NodeKind::Return:
            need(nc <= 1, "at most one value");
            break;
        case NodeKind::ExprStmt:
        case NodeKind::UnOp:
        case NodeKind::Attr:
            need(nc == 1, "expects one child");
            break;
        case NodeKind::Ref:
            need(nc == 1 && kid(0) == NodeKind::Identifier, "expects one ident");
            break;
        case NodeKind::BinOp:
        case NodeKind::Compare:
        case NodeKind::BoolOp:
        case NodeKind::Index:
            need(nc == 2, "expects two children");
            break;
        case NodeKind::Call:
            need(!n.name.empty() || nc >= 1, "missing callee");
            break;
        case NodeKind::Print:
        case NodeKind::ListLit:
            break;
        }
        if (n.kind == NodeKind::If || n.kind == NodeKind::While || n.kind == NodeKind::FunctionDef ||
            n.kind == NodeKind::ForRange) {
            for (size_t i = n.body_start(); i < nc; ++i)
                need(is_statement(kid(i)), "body children must be statements");
        }
        if (has_op(n.kind))
            need(!n.op.empty(), "missing :op");
        if (n.kind == NodeKind::Attr || n.kind == NodeKind::AttrAssign)
            need(!n.name.empty(), "missing :attr");
    }

    std::string_view m_s;
    size_t m_pos = 0;
    int m_line = 1;
    int m_form_line = 1;
    Tok m_tok{Tok::End, "", 1};
};

}  // namespace

std::string serialize_ast(const AstNode& root)
{
    Writer w;
    w.node(root, 0);
    w.out += '\n';
    return w.out;
}

NodePtr deserialize_ast(std::string_view text)
{
    return Reader(text).read_root();
}

}  // namespace vpy
