#include "vpy/ast.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "vpy/format.hpp"

namespace vpy {

namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 26> kind_names = {{
    {NodeKind::Module, "module"},
    {NodeKind::FunctionDef, "funcdef"},
    {NodeKind::LambdaExpr, "lambda"},
    {NodeKind::Declaration, "declaration"},
    {NodeKind::Identifier, "ident"},
    {NodeKind::Assign, "assign"},
    {NodeKind::IndexAssign, "indexassign"},
    {NodeKind::AttrAssign, "attrassign"},
    {NodeKind::If, "if"},
    {NodeKind::While, "while"},
    {NodeKind::ForRange, "for"},
    {NodeKind::Return, "return"},
    {NodeKind::Nonlocal, "nonlocal"},
    {NodeKind::Pass, "pass"},
    {NodeKind::Print, "print"},
    {NodeKind::ExprStmt, "expr"},
    {NodeKind::BinOp, "binop"},
    {NodeKind::UnOp, "unop"},
    {NodeKind::Compare, "compare"},
    {NodeKind::BoolOp, "boolop"},
    {NodeKind::Call, "call"},
    {NodeKind::Index, "index"},
    {NodeKind::Attr, "attr"},
    {NodeKind::Ref, "ref"},
    {NodeKind::Literal, "lit"},
    {NodeKind::ListLit, "list"},
}};

constexpr std::array<std::string_view, 6> builtin_names = {"len", "range", "int", "float", "str", "id"};

}  // namespace

std::string_view node_kind_name(NodeKind k)
{
    for (auto& [kind, name] : kind_names) {
        if (kind == k)
            return name;
    }
    return "?";
}

std::optional<NodeKind> node_kind_from_name(std::string_view name)
{
    for (auto& [kind, n] : kind_names) {
        if (n == name)
            return kind;
    }
    return std::nullopt;
}

bool is_statement(NodeKind k)
{
    switch (k) {
    case NodeKind::FunctionDef:
    case NodeKind::Declaration:
    case NodeKind::Assign:
    case NodeKind::IndexAssign:
    case NodeKind::AttrAssign:
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::ForRange:
    case NodeKind::Return:
    case NodeKind::Nonlocal:
    case NodeKind::Pass:
    case NodeKind::Print:
    case NodeKind::ExprStmt:
        return true;
    default:
        return false;
    }
}

bool is_builtin_name(std::string_view name)
{
    return std::find(builtin_names.begin(), builtin_names.end(), name) != builtin_names.end();
}

bool Literal::operator==(const Literal& o) const
{
    if (kind != o.kind)
        return false;
    switch (kind) {
    case LitKind::Int: return ival == o.ival;
    case LitKind::Real:
    case LitKind::Imag: return std::bit_cast<uint64_t>(rval) == std::bit_cast<uint64_t>(o.rval);
    case LitKind::String: return sval == o.sval;
    case LitKind::Bool: return bval == o.bval;
    case LitKind::None: return true;
    }
    return false;
}

size_t AstNode::body_start() const
{
    switch (kind) {
    case NodeKind::FunctionDef: return static_cast<size_t>(count);
    case NodeKind::If:
    case NodeKind::While: return 1;
    case NodeKind::ForRange: return 4;
    default: return 0;
    }
}

NodePtr make_node(NodeKind k, SourceLoc loc)
{
    return std::make_unique<AstNode>(k, loc);
}

NodePtr make_ident(std::string name, SourceLoc loc)
{
    auto n = make_node(NodeKind::Identifier, loc);
    n->name = std::move(name);
    return n;
}

NodePtr make_literal(Literal lit, SourceLoc loc)
{
    auto n = make_node(NodeKind::Literal, loc);
    n->lit = std::move(lit);
    return n;
}

NodePtr clone(const AstNode& n)
{
    auto c = make_node(n.kind, n.loc);
    c->name = n.name;
    c->op = n.op;
    c->lit = n.lit;
    c->count = n.count;
    c->native = n.native;
    c->type = n.type;
    c->slot = n.slot;
    c->scope_depth = n.scope_depth;
    for (auto& ch : n.children)
        c->children.push_back(clone(*ch));
    return c;
}

bool structurally_equal(const AstNode& a, const AstNode& b, bool with_locs)
{
    if (a.kind != b.kind || a.name != b.name || a.op != b.op || !(a.lit == b.lit) ||
        a.count != b.count || a.native != b.native || a.type != b.type || a.slot != b.slot ||
        a.children.size() != b.children.size())
        return false;
    if (with_locs && is_statement(a.kind) && a.loc != b.loc)
        return false;
    for (size_t i = 0; i < a.children.size(); ++i) {
        if (!structurally_equal(*a.children[i], *b.children[i], with_locs))
            return false;
    }
    return true;
}

size_t count_nodes(const AstNode& root)
{
    size_t n = 1;
    for (auto& c : root.children)
        n += count_nodes(*c);
    return n;
}

void walk(AstNode& root, const std::function<bool(AstNode&)>& visit)
{
    if (!visit(root))
        return;
    for (auto& c : root.children)
        walk(*c, visit);
}

void walk(const AstNode& root, const std::function<bool(const AstNode&)>& visit)
{
    if (!visit(root))
        return;
    for (auto& c : root.children)
        walk(static_cast<const AstNode&>(*c), visit);
}

// ---------------------------------------------------------------------------
// pretty printer

namespace {

class Printer {
public:
    std::string out;

    void block(const AstNode& parent, size_t from, size_t to, int indent)
    {
        bool any = false;
        for (size_t i = from; i < to; ++i) {
            if (parent.child(i)->kind == NodeKind::Declaration)
                continue;
            stmt(*parent.child(i), indent);
            any = true;
        }
        if (!any)
            line(indent, "pass");
    }

    void line(int indent, const std::string& text)
    {
        out += std::string(static_cast<size_t>(indent) * 4, ' ');
        out += text;
        out += '\n';
    }

    void stmt(const AstNode& n, int indent)
    {
        switch (n.kind) {
        case NodeKind::FunctionDef: {
            std::string head = "def " + n.name + "(";
            for (int i = 0; i < n.count; ++i)
                head += (i ? ", " : "") + n.child(static_cast<size_t>(i))->name;
            line(indent, head + "):");
            block(n, static_cast<size_t>(n.count), n.children.size(), indent + 1);
            break;
        }
        case NodeKind::Declaration:
            break;
        case NodeKind::Assign:
            line(indent, n.child(0)->name + " = " + expr(*n.child(1)));
            break;
        case NodeKind::IndexAssign:
            line(indent, n.child(0)->name + "[" + expr(*n.child(1)) + "] = " + expr(*n.child(2)));
            break;
        case NodeKind::AttrAssign:
            line(indent, n.child(0)->name + "." + n.name + " = " + expr(*n.child(1)));
            break;
        case NodeKind::If: {
            size_t then_end = 1 + static_cast<size_t>(n.count);
            line(indent, "if " + expr(*n.child(0)) + ":");
            block(n, 1, then_end, indent + 1);
            if (then_end < n.children.size()) {
                line(indent, "else:");
                block(n, then_end, n.children.size(), indent + 1);
            }
            break;
        }
        case NodeKind::While:
            line(indent, "while " + expr(*n.child(0)) + ":");
            block(n, 1, n.children.size(), indent + 1);
            break;
        case NodeKind::ForRange:
            line(indent, "for " + n.child(0)->name + " in range(" + expr(*n.child(1)) + ", " +
                             expr(*n.child(2)) + ", " + expr(*n.child(3)) + "):");
            block(n, 4, n.children.size(), indent + 1);
            break;
        case NodeKind::Return:
            line(indent, n.children.empty() ? "return" : "return " + expr(*n.child(0)));
            break;
        case NodeKind::Nonlocal:
            line(indent, "nonlocal " + n.name);
            break;
        case NodeKind::Pass:
            line(indent, "pass");
            break;
        case NodeKind::Print:
            line(indent, "print(" + args(n, 0) + ")");
            break;
        case NodeKind::ExprStmt:
            line(indent, expr(*n.child(0)));
            break;
        default:
            line(indent, expr(n));
        }
    }

    std::string args(const AstNode& n, size_t from)
    {
        std::string s;
        for (size_t i = from; i < n.children.size(); ++i) {
            if (i > from)
                s += ", ";
            s += expr(*n.child(i));
        }
        return s;
    }

    std::string expr(const AstNode& n)
    {
        switch (n.kind) {
        case NodeKind::Identifier:
        case NodeKind::Declaration:
            return n.name;
        case NodeKind::Literal:
            return literal(n.lit);
        case NodeKind::ListLit:
            return "[" + args(n, 0) + "]";
        case NodeKind::BinOp:
        case NodeKind::Compare:
        case NodeKind::BoolOp:
            return "(" + expr(*n.child(0)) + " " + n.op + " " + expr(*n.child(1)) + ")";
        case NodeKind::UnOp:
            return "(" + n.op + (n.op == "not" ? " " : "") + expr(*n.child(0)) + ")";
        case NodeKind::Ref:
            return "(&" + expr(*n.child(0)) + ")";
        case NodeKind::Call:
            if (n.is_builtin_call())
                return n.name + "(" + args(n, 0) + ")";
            if (n.child(0)->kind == NodeKind::Identifier)
                return n.child(0)->name + "(" + args(n, 1) + ")";
            return "(" + expr(*n.child(0)) + ")(" + args(n, 1) + ")";
        case NodeKind::Index:
            return primary(*n.child(0)) + "[" + expr(*n.child(1)) + "]";
        case NodeKind::Attr:
            return primary(*n.child(0)) + "." + n.name;
        case NodeKind::LambdaExpr: {
            if (n.children.empty())
                return "(lambda: None)";
            std::string s = "(lambda";
            for (int i = 0; i < n.count; ++i)
                s += (i ? ", " : " ") + n.child(static_cast<size_t>(i))->name;
            return s + ": " + expr(*n.children.back()) + ")";
        }
        default:
            return "<" + std::string(node_kind_name(n.kind)) + ">";
        }
    }

    std::string primary(const AstNode& n)
    {
        if (n.kind == NodeKind::Identifier || n.kind == NodeKind::Call || n.kind == NodeKind::Index ||
            n.kind == NodeKind::ListLit)
            return expr(n);
        return "(" + expr(n) + ")";
    }

    static std::string literal(const Literal& l)
    {
        switch (l.kind) {
        case LitKind::Int:
            return l.ival < 0 ? "(" + std::to_string(l.ival) + ")" : std::to_string(l.ival);
        case LitKind::Real: {
            std::string s = format_real(l.rval);
            return s[0] == '-' ? "(" + s + ")" : s;
        }
        case LitKind::Imag: {
            std::string s = format_real(l.rval) + "j";
            return s[0] == '-' ? "(" + s + ")" : s;
        }
        case LitKind::String: return quote_string(l.sval);
        case LitKind::Bool: return l.bval ? "True" : "False";
        case LitKind::None: return "None";
        }
        return "None";
    }
};

}  // namespace

std::string pretty_print(const AstNode& root)
{
    Printer p;
    if (root.kind == NodeKind::Module) {
        for (auto& c : root.children)
            p.stmt(*c, 0);
    } else if (is_statement(root.kind)) {
        p.stmt(root, 0);
    } else {
        p.out = p.expr(root);
    }
    return p.out;
}

}  // namespace vpy
