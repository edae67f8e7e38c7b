#include "vpy/codegen_dot.hpp"

#include "vpy/format.hpp"

namespace vpy {

namespace {

std::string literal_text(const Literal& l)
{
    switch (l.kind) {
    case LitKind::Int: return "int " + std::to_string(l.ival);
    case LitKind::Real: return "real " + format_real(l.rval);
    case LitKind::Bool: return l.bval ? "bool True" : "bool False";
    case LitKind::String: return "string " + repr_string(l.sval);
    case LitKind::Imag: return "imag " + format_real(l.rval) + "j";
    case LitKind::None: return "None";
    }
    return "";
}

std::string headline(const AstNode& n)
{
    std::string s(node_kind_name(n.kind));
    switch (n.kind) {
    case NodeKind::BinOp:
    case NodeKind::UnOp:
    case NodeKind::Compare:
    case NodeKind::BoolOp: s += " " + n.op; break;
    case NodeKind::Literal: s += " " + literal_text(n.lit); break;
    default:
        if (!n.name.empty())
            s += " " + n.name;
    }
    if (n.native)
        s += " native";
    return s;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\')
            out += '\\';
        if (c == '\n') {
            out += "\\\\n";
            continue;
        }
        out += c;
    }
    return out;
}

struct Writer {
    std::string out;
    int next = 0;

    int visit(const AstNode& n)
    {
        int id = next++;
        std::string label = escape(headline(n));
        if (n.type)
            label += "\\n" + escape(to_string(*n.type));
        if (n.slot)
            label += "\\n" + to_string(*n.slot);
        out += "  n" + std::to_string(id) + " [label=\"" + label + "\"];\n";
        for (auto& c : n.children) {
            int cid = visit(*c);
            out += "  n" + std::to_string(id) + " -> n" + std::to_string(cid) + ";\n";
        }
        return id;
    }
};

}  // namespace

std::string emit_dot(const AstNode& root)
{
    Writer w;
    w.out = "digraph ast {\n  node [shape=box, fontname=\"monospace\"];\n";
    w.visit(root);
    w.out += "}\n";
    return w.out;
}

}  // namespace vpy
