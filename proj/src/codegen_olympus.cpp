#include "vpy/codegen_olympus.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "vpy/format.hpp"
#include "vpy/typeinfer.hpp"

namespace vpy {

namespace {

const std::vector<std::string_view> k_isa = {
    "HEAP", "FUNDECL", "FUNC", "FUNEND", "MAIN", "MAINEND",
    "ADDRL", "ADDRF", "REF", "ID", "TRUE", "FALSE", "NONE",
    "DECLI", "DECLB", "DECLR", "DECLS", "DECLC", "DECLV", "DECLN", "DECLL",
    "LDI", "LDB", "LDR", "LDS", "LDC", "LDV", "LDL", "LDN",
    "STI", "STB", "STR", "STS", "STC", "STV", "STL", "STN",
    "LDAI", "LDAB", "LDAR", "LDAS", "LDAC", "IDXI", "IDXR", "IDXS", "IDXC", "CHARAT",
    "STAI", "STAB", "STAR", "STAS", "STAC",
    "VECI", "VECR", "VECH", "ADDVI", "ADDVR", "ADDVH", "MULVI", "MULVR", "MULVH", "LEN",
    "LITS", "ADDS", "MULS", "CMPS",
    "CPLX", "RTOC", "CADD", "CSUB", "CMUL", "CDIV", "CNEG", "CPOS", "CEQ",
    "LDCR", "LDCI", "CREAL", "CIMAG", "STCR", "STCI",
    "MODI", "POWI", "DIVR", "MODR", "POWR", "I2R", "R2I", "S2I", "S2R",
    "STR_I", "STR_B", "STR_R", "STR_S", "STR_C", "STR_N",
    "STR_VI", "STR_VB", "STR_VR", "STR_VS", "STR_VC",
    "PUT_I", "PUT_B", "PUT_R", "PUT_S", "PUT_C", "PUT_N",
    "PUT_VI", "PUT_VB", "PUT_VR", "PUT_VS", "PUT_VC", "PUT_SP", "PRINT_NL",
    "PRINT_I", "PRINT_B", "PRINT_R", "PRINT_S", "PRINT_C", "PRINT_N",
    "PRINT_VI", "PRINT_VB", "PRINT_VR", "PRINT_VS", "PRINT_VC",
    "IF", "ELSE", "WHILE", "FOR", "FORS", "END", "EVAL", "TRESET",
    "MKLAMBDA", "ARGS", "NOARGS", "ARGI", "ARGR", "ARGH",
    "APPLY_I", "APPLY_R", "APPLY_H", "APPLY_N", "RET_I", "RET_R", "RET_H", "RET_N",
};

const FrozenType& type_of(const AstNode& n)
{
    if (!n.type)
        fail(ErrorKind::Internal, n.loc, std::string(node_kind_name(n.kind)) + " node has no type");
    return *n.type;
}

// Suffix for scalar slot access: bool shares the int cell.
std::string slot_suffix(const FrozenType& t)
{
    switch (t.tag) {
    case TypeTag::Int:
    case TypeTag::Bool: return "I";
    case TypeTag::Real: return "R";
    case TypeTag::String: return "S";
    case TypeTag::Complex: return "C";
    case TypeTag::Vector: return "V";
    case TypeTag::Lambda: return "L";
    case TypeTag::None: return "N";
    }
    return "I";
}

std::string decl_suffix(const FrozenType& t)
{
    return t.is(TypeTag::Bool) ? "B" : slot_suffix(t);
}

// Element access family: ints and bools share one cell layout.
std::string elem_suffix(const FrozenType& t)
{
    switch (t.tag) {
    case TypeTag::Int:
    case TypeTag::Bool: return "I";
    case TypeTag::Real: return "R";
    case TypeTag::String: return "S";
    default: return "C";
    }
}

std::string vec_family(const FrozenType& elem)
{
    if (elem.is_integral())
        return "I";
    if (elem.is(TypeTag::Real))
        return "R";
    return "H";
}

std::string show_suffix(const FrozenType& t)
{
    switch (t.tag) {
    case TypeTag::Int: return "I";
    case TypeTag::Bool: return "B";
    case TypeTag::Real: return "R";
    case TypeTag::String: return "S";
    case TypeTag::Complex: return "C";
    case TypeTag::None: return "N";
    case TypeTag::Vector: return "V" + show_suffix(t.elem());
    case TypeTag::Lambda: break;
    }
    fail(ErrorKind::Internal, {}, "cannot print " + to_string(t));
}

// Return-cell family for APPLY and RET.
std::string cell_suffix(const FrozenType& t)
{
    if (t.is_integral())
        return "I";
    if (t.is(TypeTag::Real))
        return "R";
    if (t.is(TypeTag::None))
        return "N";
    return "H";
}

std::string c_string(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s) {
        auto c = static_cast<unsigned char>(ch);
        if (ch == '"' || ch == '\\') {
            out += '\\';
            out += ch;
        } else if (c < 0x20 || c >= 0x7F || ch == '?') {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\%03o", c);
            out += buf;
        } else {
            out += ch;
        }
    }
    return out + "\"";
}

class Emitter {
public:
    explicit Emitter(const OlympusOptions& opts) : m_opts(opts) {}

    std::string module(const AstNode& root)
    {
        if (root.kind != NodeKind::Module)
            fail(ErrorKind::Internal, root.loc, "emitter needs a module");
        m_layouts = frame_layouts(root);
        for (size_t k = 1; k < m_layouts.size(); ++k) {
            const AstNode* owner = m_layouts[k].owner;
            std::string base = owner->kind == NodeKind::FunctionDef ? owner->name : "lambda";
            m_names[owner] = "F" + std::to_string(k) + "_" + base;
            m_depths[owner] = m_layouts[k].depth;
        }

        m_out = "#ifndef OLYMPUS_HEAP_BYTES\n#define OLYMPUS_HEAP_BYTES " + std::to_string(m_opts.heap_bytes) +
                "\n#endif\n#include \"olympus.h\"\n\nHEAP(OLYMPUS_HEAP_BYTES);\n";
        if (m_layouts.size() > 1) {
            m_out += "\n";
            for (size_t k = 1; k < m_layouts.size(); ++k)
                m_out += "FUNDECL(" + m_names[m_layouts[k].owner] + ");\n";
        }
        for (size_t k = 1; k < m_layouts.size(); ++k)
            function(m_layouts[k]);

        const FrameLayout& top = m_layouts.front();
        m_out += "\nMAIN(" + std::to_string(top.slots.size()) + "," + slot_map(top) + ")\n";
        m_fn_result = nullptr;
        block(root, 0, root.children.size(), 1);
        m_out += "MAINEND\n";
        return m_out;
    }

private:
    static std::string slot_map(const FrameLayout& l)
    {
        std::string m;
        for (auto& s : l.slots)
            m += slot_map_char(s.type);
        return "\"" + m + "\"";
    }

    void function(const FrameLayout& l)
    {
        const AstNode& fn = *l.owner;
        const FrozenType& t = type_of(fn);
        std::string name = m_names.at(&fn);
        bool typed = t.is(TypeTag::Lambda) && t.signature_known && !(fn.children.empty() && fn.count == 0);
        if (!typed) {
            m_out += "\nFUNC(" + name + "," + std::to_string(l.depth) + ",0,0,\"\",0)\nFUNEND\n";
            return;
        }
        const FrozenType& result = t.result();
        m_out += "\nFUNC(" + name + "," + std::to_string(l.depth) + "," + std::to_string(l.slots.size()) + "," +
                 std::to_string(fn.count) + "," + slot_map(l) + "," + (result.is_compound() ? "1" : "0") +
                 ")\n";
        const FrozenType* saved = m_fn_result;
        m_fn_result = &result;
        if (fn.kind == NodeKind::LambdaExpr) {
            const AstNode& body = *fn.children.back();
            line(1, "RET_" + cell_suffix(result) + "(" + coerce(body, result) + ");");
        } else {
            block(fn, static_cast<size_t>(fn.count), fn.children.size(), 1);
        }
        m_fn_result = saved;
        m_out += "FUNEND\n";
    }

    void line(int indent, const std::string& text)
    {
        m_out.append(static_cast<size_t>(indent) * 4, ' ');
        m_out += text;
        m_out += '\n';
    }

    void block(const AstNode& n, size_t from, size_t to, int indent)
    {
        for (size_t i = from; i < to; ++i)
            statement(*n.child(i), indent);
    }

    void reset(int indent) { line(indent, "TRESET();"); }

    void statement(const AstNode& s, int indent)
    {
        switch (s.kind) {
        case NodeKind::Declaration: {
            if (s.native)
                return;
            const FrozenType& t = type_of(s);
            std::string o = std::to_string(own_slot(s).offset);
            if (t.is(TypeTag::Lambda))
                line(indent, "DECLL(" + o + ",NONE);");
            else
                line(indent, "DECL" + decl_suffix(t) + "(" + o + ");");
            return;
        }
        case NodeKind::FunctionDef:
            line(indent, "DECLL(" + std::to_string(own_slot(s).offset) + "," + closure(s) + ");");
            reset(indent);
            return;
        case NodeKind::Assign: {
            const AstNode& target = *s.child(0);
            const AstNode& value = *s.child(1);
            if (target.native)
                fail(ErrorKind::Internal, s.loc, "store to native loop index '" + target.name + "'");
            const FrozenType& t = type_of(target);
            line(indent, "ST" + slot_suffix(t) + "(" + address(target) + "," + coerce(value, t) + ");");
            if (roots(value))
                reset(indent);
            return;
        }
        case NodeKind::IndexAssign: {
            const AstNode& target = *s.child(0);
            const FrozenType& elem = type_of(target).elem();
            line(indent, "STA" + elem_suffix(elem) + "(" + address(target) + "," + expr(*s.child(1)) + "," +
                             coerce(*s.child(2), elem) + ");");
            if (roots(*s.child(1)) || roots(*s.child(2)))
                reset(indent);
            return;
        }
        case NodeKind::AttrAssign: {
            const AstNode& target = *s.child(0);
            std::string part = s.name == "real" ? "STCR" : "STCI";
            line(indent, part + "(" + address(target) + "," + coerce(*s.child(1), real_t()) + ");");
            if (roots(*s.child(1)))
                reset(indent);
            return;
        }
        case NodeKind::If: {
            const AstNode& cond = *s.child(0);
            bool r = roots(cond);
            size_t then_end = 1 + static_cast<size_t>(s.count);
            line(indent, "IF(" + expr(cond) + ")");
            if (r)
                reset(indent + 1);
            block(s, 1, then_end, indent + 1);
            if (then_end < s.children.size()) {
                line(indent, "ELSE");
                if (r)
                    reset(indent + 1);
                block(s, then_end, s.children.size(), indent + 1);
            }
            line(indent, "END");
            if (r)
                reset(indent);
            return;
        }
        case NodeKind::While: {
            const AstNode& cond = *s.child(0);
            bool r = roots(cond);
            line(indent, "WHILE(" + expr(cond) + ")");
            if (r)
                reset(indent + 1);
            block(s, 1, s.children.size(), indent + 1);
            line(indent, "END");
            if (r)
                reset(indent);
            return;
        }
        case NodeKind::ForRange: {
            const AstNode& target = *s.child(0);
            bool r = roots(*s.child(1)) || roots(*s.child(2)) || roots(*s.child(3));
            std::string bounds = expr(*s.child(1)) + "," + expr(*s.child(2)) + "," + expr(*s.child(3));
            if (s.native)
                line(indent, "FOR(" + native_name(target.name) + "," + bounds + ")");
            else
                line(indent, "FORS(" + emit_address(own_slot(target)) + "," + bounds + ")");
            if (r)
                reset(indent + 1);
            block(s, 4, s.children.size(), indent + 1);
            line(indent, "END");
            if (r)
                reset(indent);
            return;
        }
        case NodeKind::Return: {
            if (!m_fn_result)
                fail(ErrorKind::Internal, s.loc, "return outside a function");
            const FrozenType& t = *m_fn_result;
            std::string v = s.children.empty() ? "NONE" : coerce(*s.child(0), t);
            line(indent, "RET_" + cell_suffix(t) + "(" + v + ");");
            return;
        }
        case NodeKind::Print: {
            if (s.children.empty()) {
                line(indent, "PRINT_NL();");
                return;
            }
            bool r = false;
            if (s.children.size() == 1) {
                const AstNode& a = *s.child(0);
                line(indent, "PRINT_" + show_suffix(type_of(a)) + "(" + expr(a) + ");");
                r = roots(a);
            } else {
                std::string text;
                for (size_t i = 0; i < s.children.size(); ++i) {
                    const AstNode& a = *s.child(i);
                    if (i)
                        text += "PUT_SP();";
                    text += "PUT_" + show_suffix(type_of(a)) + "(" + expr(a) + ");";
                    r = r || roots(a);
                }
                line(indent, text + "PRINT_NL();");
            }
            if (r)
                reset(indent);
            return;
        }
        case NodeKind::ExprStmt:
            line(indent, "EVAL(" + expr(*s.child(0)) + ");");
            if (roots(*s.child(0)))
                reset(indent);
            return;
        case NodeKind::Nonlocal:
        case NodeKind::Pass:
            return;
        default:
            fail(ErrorKind::Internal, s.loc, "cannot emit " + std::string(node_kind_name(s.kind)));
        }
    }

    // True when evaluating e leaves entries on the temporary-root stack.
    bool roots(const AstNode& e) const
    {
        switch (e.kind) {
        case NodeKind::Identifier: return !e.native && e.type && e.type->is_compound();
        case NodeKind::Literal: return e.lit.kind == LitKind::String || e.lit.kind == LitKind::Imag;
        case NodeKind::ListLit:
        case NodeKind::LambdaExpr: return true;
        case NodeKind::Ref: return false;
        case NodeKind::Call:
            if (e.is_builtin_call() && e.name == "id")
                return false;
            return !e.is_builtin_call() || type_of(e).is_compound() || roots(*e.child(0));
        case NodeKind::Index: {
            const AstNode& base = *e.child(0);
            bool by_slot = base.kind == NodeKind::Identifier && !base.native && type_of(base).is(TypeTag::Vector);
            return type_of(e).is_compound() || (!by_slot && roots(base)) || roots(*e.child(1));
        }
        case NodeKind::Attr: {
            const AstNode& base = *e.child(0);
            return base.kind == NodeKind::Identifier ? false : roots(base);
        }
        default:
            if (e.type && e.type->is_compound())
                return true;
            for (auto& c : e.children) {
                if (roots(*c))
                    return true;
            }
            return false;
        }
    }

    static const FrozenType& real_t()
    {
        static const FrozenType t = FrozenType::scalar(TypeTag::Real);
        return t;
    }

    static std::string native_name(const std::string& name) { return "$iter_" + name + "$"; }

    static const SlotRef& own_slot(const AstNode& n)
    {
        if (!n.slot)
            fail(ErrorKind::Internal, n.loc, "'" + n.name + "' has no slot");
        return *n.slot;
    }

    static std::string address(const AstNode& id)
    {
        if (id.kind != NodeKind::Identifier)
            fail(ErrorKind::Internal, id.loc, "address of a non-identifier");
        if (id.native)
            fail(ErrorKind::Internal, id.loc, "address of native loop index '" + id.name + "'");
        return emit_address(own_slot(id));
    }

    std::string closure(const AstNode& fn)
    {
        return "MKLAMBDA(" + m_names.at(&fn) + "," + std::to_string(m_depths.at(&fn)) + ")";
    }

    // Renders e converted to `to`; the typing rules only admit widening.
    std::string coerce(const AstNode& e, const FrozenType& to)
    {
        const FrozenType& from = type_of(e);
        std::string s = expr(e);
        if (from == to || to.is(TypeTag::None))
            return s;
        if (to.is(TypeTag::Real) && from.is_integral())
            return "I2R(" + s + ")";
        if (to.is(TypeTag::Int) && from.is(TypeTag::Bool))
            return s;
        if (to.is(TypeTag::Complex) && from.is_integral())
            return "RTOC(I2R(" + s + "))";
        if (to.is(TypeTag::Complex) && from.is(TypeTag::Real))
            return "RTOC(" + s + ")";
        if (to.is(TypeTag::Lambda) && from.is(TypeTag::Lambda))
            return s;
        fail(ErrorKind::Internal, e.loc, "no conversion from " + to_string(from) + " to " + to_string(to));
    }

    std::string int_literal(int64_t v) const
    {
        if (m_opts.compile.int_width == 64 && v == INT64_MIN)
            return "(-9223372036854775807LL-1)";
        if (m_opts.compile.int_width == 32 && v == INT32_MIN)
            return "(-2147483647-1)";
        std::string s = std::to_string(v);
        if (v > INT32_MAX || v < INT32_MIN)
            s += "LL";
        return v < 0 ? "(" + s + ")" : s;
    }

    std::string real_literal(double v) const
    {
        bool r32 = m_opts.compile.real32();
        if (r32)
            v = static_cast<double>(static_cast<float>(v));
        if (std::isinf(v))
            return v < 0 ? "(-1e999)" : "1e999";
        if (std::isnan(v))
            fail(ErrorKind::Internal, {}, "nan literal");
        std::string s = format_real(v, r32);
        return s[0] == '-' ? "(" + s + ")" : s;
    }

    std::string expr(const AstNode& e)
    {
        switch (e.kind) {
        case NodeKind::Literal: return literal(e);
        case NodeKind::Identifier: {
            if (e.native)
                return native_name(e.name);
            const FrozenType& t = type_of(e);
            return "LD" + slot_suffix(t) + "(" + address(e) + ")";
        }
        case NodeKind::ListLit: {
            const FrozenType& elem = type_of(e).elem();
            std::string s = "VEC" + vec_family(elem) + "(" + std::to_string(e.children.size());
            for (auto& c : e.children)
                s += "," + coerce(*c, elem);
            return s + ")";
        }
        case NodeKind::BinOp: return binop(e);
        case NodeKind::UnOp: return unop(e);
        case NodeKind::Compare: return compare(e);
        case NodeKind::BoolOp:
            return "(" + expr(*e.child(0)) + (e.op == "and" ? "&&" : "||") + expr(*e.child(1)) + ")";
        case NodeKind::Index: {
            const AstNode& base = *e.child(0);
            const FrozenType& bt = type_of(base);
            std::string idx = expr(*e.child(1));
            if (bt.is(TypeTag::String))
                return "CHARAT(" + expr(base) + "," + idx + ")";
            std::string suffix = elem_suffix(bt.elem());
            if (base.kind == NodeKind::Identifier && !base.native)
                return "LDA" + suffix + "(" + address(base) + "," + idx + ")";
            return "IDX" + suffix + "(" + expr(base) + "," + idx + ")";
        }
        case NodeKind::Attr: {
            const AstNode& base = *e.child(0);
            bool re = e.name == "real";
            if (base.kind == NodeKind::Identifier && !base.native)
                return std::string(re ? "LDCR(" : "LDCI(") + address(base) + ")";
            return std::string(re ? "CREAL(" : "CIMAG(") + expr(base) + ")";
        }
        case NodeKind::Ref: return "REF(" + address(*e.child(0)) + ")";
        case NodeKind::LambdaExpr: return closure(e);
        case NodeKind::Call: return e.is_builtin_call() ? builtin(e) : call(e);
        default:
            fail(ErrorKind::Internal, e.loc, "cannot emit expression " + std::string(node_kind_name(e.kind)));
        }
    }

    std::string literal(const AstNode& e) const
    {
        const Literal& l = e.lit;
        switch (l.kind) {
        case LitKind::Int: return int_literal(wrap_int(l.ival, m_opts.compile.int_width));
        case LitKind::Real: return real_literal(l.rval);
        case LitKind::Bool: return l.bval ? "TRUE" : "FALSE";
        case LitKind::String: return "LITS(" + c_string(l.sval) + ")";
        case LitKind::Imag: return "CPLX(0.0," + real_literal(l.rval) + ")";
        case LitKind::None: return "NONE";
        }
        return "NONE";
    }

    std::string binop(const AstNode& e)
    {
        const AstNode& a = *e.child(0);
        const AstNode& b = *e.child(1);
        const FrozenType& at = type_of(a);
        const FrozenType& bt = type_of(b);
        const FrozenType& rt = type_of(e);
        const std::string& op = e.op;
        auto infix = [&](const std::string& x, const std::string& y) { return "(" + x + op + y + ")"; };
        auto call2 = [](const std::string& f, const std::string& x, const std::string& y) {
            return f + "(" + x + "," + y + ")";
        };

        if (rt.is(TypeTag::Int)) {
            std::string x = expr(a), y = expr(b);
            if (op == "%")
                return call2("MODI", x, y);
            if (op == "**")
                return call2("POWI", x, y);
            return infix(x, y);
        }
        if (rt.is(TypeTag::Real)) {
            std::string x = coerce(a, real_t()), y = coerce(b, real_t());
            if (op == "/")
                return call2("DIVR", x, y);
            if (op == "%")
                return call2("MODR", x, y);
            if (op == "**")
                return call2("POWR", x, y);
            return infix(x, y);
        }
        if (rt.is(TypeTag::Complex)) {
            std::string x = coerce(a, rt), y = coerce(b, rt);
            static const std::map<std::string, std::string> ops = {
                {"+", "CADD"}, {"-", "CSUB"}, {"*", "CMUL"}, {"/", "CDIV"}};
            return call2(ops.at(op), x, y);
        }
        if (rt.is(TypeTag::String)) {
            if (op == "+")
                return call2("ADDS", expr(a), expr(b));
            bool left = at.is(TypeTag::String);
            return call2("MULS", expr(left ? a : b), expr(left ? b : a));
        }
        if (rt.is(TypeTag::Vector)) {
            std::string fam = vec_family(rt.elem());
            if (op == "+")
                return call2("ADDV" + fam, expr(a), expr(b));
            bool left = at.is(TypeTag::Vector);
            return call2("MULV" + fam, expr(left ? a : b), expr(left ? b : a));
        }
        (void)bt;
        fail(ErrorKind::Internal, e.loc, "no mnemonic for " + op + " giving " + to_string(rt));
    }

    std::string unop(const AstNode& e)
    {
        const AstNode& a = *e.child(0);
        const FrozenType& t = type_of(a);
        if (e.op == "not")
            return "(!" + expr(a) + ")";
        if (t.is(TypeTag::Complex))
            return std::string(e.op == "-" ? "CNEG(" : "CPOS(") + expr(a) + ")";
        return "(" + e.op + expr(a) + ")";
    }

    std::string compare(const AstNode& e)
    {
        const AstNode& a = *e.child(0);
        const AstNode& b = *e.child(1);
        const FrozenType& at = type_of(a);
        const FrozenType& bt = type_of(b);
        if (at.is(TypeTag::String))
            return "(CMPS(" + expr(a) + "," + expr(b) + ")" + e.op + "0)";
        if (at.is(TypeTag::Complex) || bt.is(TypeTag::Complex)) {
            static const FrozenType c = FrozenType::scalar(TypeTag::Complex);
            std::string eq = "CEQ(" + coerce(a, c) + "," + coerce(b, c) + ")";
            return e.op == "==" ? eq : "(!" + eq + ")";
        }
        if (at.is_integral() && bt.is_integral())
            return "(" + expr(a) + e.op + expr(b) + ")";
        return "(" + coerce(a, real_t()) + e.op + coerce(b, real_t()) + ")";
    }

    std::string builtin(const AstNode& e)
    {
        const std::string& f = e.name;
        if (f == "id")
            return "ID(" + address(*e.child(0)) + ")";
        const AstNode& a = *e.child(0);
        const FrozenType& t = type_of(a);
        std::string x = expr(a);
        if (f == "len")
            return "LEN(" + x + ")";
        if (f == "str")
            return "STR_" + show_suffix(t) + "(" + x + ")";
        if (f == "int") {
            if (t.is(TypeTag::String))
                return "S2I(" + x + ")";
            if (t.is(TypeTag::Real))
                return "R2I(" + x + ")";
            return x;
        }
        if (f == "float") {
            if (t.is(TypeTag::String))
                return "S2R(" + x + ")";
            if (t.is(TypeTag::Real))
                return x;
            return "I2R(" + x + ")";
        }
        fail(ErrorKind::Internal, e.loc, "no mnemonic for builtin " + f);
    }

    std::string call(const AstNode& e)
    {
        const AstNode& callee = *e.child(0);
        const FrozenType& ft = type_of(callee);
        if (!ft.is(TypeTag::Lambda) || !ft.signature_known)
            fail(ErrorKind::Internal, e.loc, "call through an untyped function value");
        size_t n = e.children.size() - 1;
        std::string args;
        for (size_t i = 0; i < n; ++i) {
            const FrozenType& pt = ft.elems.at(i);
            std::string kind = pt.is_integral() ? "ARGI" : pt.is(TypeTag::Real) ? "ARGR" : "ARGH";
            if (pt.is(TypeTag::None))
                kind = "ARGI";
            if (i)
                args += ",";
            args += kind + "(" + coerce(*e.child(i + 1), pt) + ")";
        }
        std::string packed = n == 0 ? "NOARGS" : "ARGS(" + args + ")";
        return "APPLY_" + cell_suffix(ft.result()) + "(" + expr(callee) + "," + std::to_string(n) + "," + packed +
               ")";
    }

    const OlympusOptions& m_opts;
    std::vector<FrameLayout> m_layouts;
    std::map<const AstNode*, std::string> m_names;
    std::map<const AstNode*, int> m_depths;
    const FrozenType* m_fn_result = nullptr;
    std::string m_out;
};

bool ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool ident_char(char c)
{
    return ident_start(c) || (c >= '0' && c <= '9');
}

bool generated_fn_name(std::string_view tok)
{
    if (tok.size() < 3 || tok[0] != 'F')
        return false;
    size_t i = 1;
    while (i < tok.size() && tok[i] >= '0' && tok[i] <= '9')
        ++i;
    return i > 1 && i < tok.size() && tok[i] == '_';
}

bool native_index_name(std::string_view tok)
{
    return tok.size() > 7 && tok.substr(0, 6) == "$iter_" && tok.back() == '$' &&
           tok.substr(6, tok.size() - 7).find('$') == std::string_view::npos;
}

}  // namespace

std::string emit_address(SlotRef slot)
{
    if (slot.level == 0)
        return "ADDRL(" + std::to_string(slot.offset) + ")";
    return "ADDRF(" + std::to_string(slot.level) + "," + std::to_string(slot.offset) + ")";
}

std::string emit_olympus(const AstNode& root, const OlympusOptions& opts)
{
    return Emitter(opts).module(root);
}

const std::vector<std::string_view>& isa_mnemonics()
{
    return k_isa;
}

std::vector<ScanFinding> scan_emitted(std::string_view unit)
{
    static const std::set<std::string_view> allowed(k_isa.begin(), k_isa.end());
    std::vector<ScanFinding> out;
    int line = 1;
    bool line_start = true;
    size_t i = 0;
    while (i < unit.size()) {
        char c = unit[i];
        if (c == '\n') {
            ++line;
            line_start = true;
            ++i;
            continue;
        }
        if (line_start && c == '#') {
            while (i < unit.size() && unit[i] != '\n')
                ++i;
            continue;
        }
        if (c != ' ' && c != '\t')
            line_start = false;
        if (c == '"') {
            ++i;
            while (i < unit.size() && unit[i] != '"') {
                if (unit[i] == '\\')
                    ++i;
                ++i;
            }
            ++i;
            continue;
        }
        if (c >= '0' && c <= '9') {
            // numeric constant with optional exponent and suffix
            while (i < unit.size()) {
                char d = unit[i];
                bool exp_sign = (d == '+' || d == '-') && (unit[i - 1] == 'e' || unit[i - 1] == 'E');
                if (!(ident_char(d) || d == '.' || exp_sign))
                    break;
                ++i;
            }
            continue;
        }
        if (ident_start(c)) {
            size_t b = i;
            while (i < unit.size() && ident_char(unit[i]))
                ++i;
            std::string_view tok = unit.substr(b, i - b);
            if (tok[0] == '$') {
                // the closing '$' of a native index is part of the token
                if (i < unit.size() && unit[i] == '$')
                    ++i;
                tok = unit.substr(b, i - b);
            }
            bool config = tok == "OLYMPUS_HEAP_BYTES";
            if (!config && !allowed.count(tok) && !native_index_name(tok) && !generated_fn_name(tok))
                out.push_back({line, std::string(tok)});
            continue;
        }
        ++i;
    }
    return out;
}

}  // namespace vpy
