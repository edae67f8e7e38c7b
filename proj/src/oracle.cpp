#include "vpy/oracle.hpp"

#include <cmath>
#include <cstring>
#include <memory>
#include <unordered_map>
#include <variant>

#include "vpy/format.hpp"
#include "vpy/optimizer.hpp"
#include "vpy/typeinfer.hpp"

namespace vpy {

const char* trap_name(Trap t)
{
    switch (t) {
    case Trap::None: return "None";
    case Trap::DivByZero: return "DivByZero";
    case Trap::IndexOutOfRange: return "IndexOutOfRange";
    case Trap::HeapExhausted: return "HeapExhausted";
    case Trap::Value: return "Value";
    }
    return "?";
}

namespace {

struct Value;
struct Frame;
using FramePtr = std::shared_ptr<Frame>;

struct Complex {
    double re = 0, im = 0;
};

struct Closure {
    const AstNode* fn = nullptr;
    std::vector<FramePtr> env;  // frames at depths 0 .. depth(fn)-1
};

using Vec = std::vector<Value>;

struct Value {
    std::variant<std::monostate, int64_t, double, bool, std::shared_ptr<const std::string>, std::shared_ptr<Complex>,
                 std::shared_ptr<Vec>, std::shared_ptr<Closure>>
        v;

    int64_t i() const { return std::holds_alternative<bool>(v) ? std::get<bool>(v) : std::get<int64_t>(v); }
    double r() const { return std::get<double>(v); }
    bool b() const { return std::get<bool>(v); }
    const std::string& s() const { return *std::get<std::shared_ptr<const std::string>>(v); }
    Complex& c() const { return *std::get<std::shared_ptr<Complex>>(v); }
    Vec& vec() const { return *std::get<std::shared_ptr<Vec>>(v); }
    const std::shared_ptr<Vec>& vec_ptr() const { return std::get<std::shared_ptr<Vec>>(v); }
    const Closure& fn() const { return *std::get<std::shared_ptr<Closure>>(v); }
};

Value of_int(int64_t x) { return Value{x}; }
Value of_real(double x) { return Value{x}; }
Value of_bool(bool x) { return Value{x}; }
Value of_str(std::string s) { return Value{std::make_shared<const std::string>(std::move(s))}; }
Value of_complex(double re, double im) { return Value{std::make_shared<Complex>(Complex{re, im})}; }
Value of_vec(Vec v) { return Value{std::make_shared<Vec>(std::move(v))}; }

struct Frame {
    std::vector<Value> slots;
    int64_t base = 0;
};

struct TrapSignal {
    Trap trap;
    std::string message;
};

struct ReturnSignal {};

const FrozenType& type_of(const AstNode& n)
{
    if (!n.type)
        fail(ErrorKind::Internal, n.loc, std::string("untyped ") + std::string(node_kind_name(n.kind)) + " node");
    return *n.type;
}

class Interpreter {
public:
    explicit Interpreter(const OracleOptions& opts) : m_opts(opts), m_width(opts.compile.int_width) {}

    RunResult run(const AstNode& root)
    {
        for (auto& layout : frame_layouts(root))
            m_frame_size[layout.owner] = layout.slots.size();
        RunResult res;
        try {
            FramePtr f = new_frame(root);
            m_display.assign(1, f);
            m_depth = 0;
            m_natives.emplace_back();
            block(root, 0, root.children.size());
        } catch (const TrapSignal& t) {
            res.err = "trap " + std::string(trap_name(t.trap)) + ": " + t.message + "\n";
            res.exit_code = static_cast<int>(t.trap);
        }
        res.out = std::move(m_out);
        return res;
    }

private:
    // -- numeric helpers ----------------------------------------------------

    double R(double x) const { return m_opts.compile.real32() ? static_cast<double>(static_cast<float>(x)) : x; }

    double to_real(int64_t x) const
    {
        if (m_opts.compile.real32())
            return static_cast<double>(static_cast<float>(x));
        return static_cast<double>(x);
    }

    int64_t wrap(uint64_t x) const { return wrap_int(static_cast<int64_t>(x), m_width); }

    [[noreturn]] void trap(Trap t, const std::string& msg, SourceLoc loc)
    {
        throw TrapSignal{t, msg + (loc.valid() ? " at " + to_string(loc) : "")};
    }

    double num(const Value& v, const FrozenType& t) const
    {
        if (t.is(TypeTag::Real))
            return v.r();
        return to_real(v.i());
    }

    Complex cplx(const Value& v, const FrozenType& t) const
    {
        if (t.is(TypeTag::Complex))
            return v.c();
        return Complex{num(v, t), 0.0};
    }

    // -- frames -------------------------------------------------------------

    FramePtr new_frame(const AstNode& owner)
    {
        auto f = std::make_shared<Frame>();
        auto it = m_frame_size.find(&owner);
        size_t n = it == m_frame_size.end() ? 0 : it->second;
        f->slots.resize(n);
        f->base = m_next_base;
        m_next_base += static_cast<int64_t>(n + 1) * 8;
        return f;
    }

    Value& slot(const AstNode& n)
    {
        if (!n.slot)
            fail(ErrorKind::Internal, n.loc, "unslotted '" + n.name + "'");
        int level = n.slot->level;
        if (level > m_depth)
            fail(ErrorKind::Internal, n.loc, "slot level past module scope");
        Frame& f = *m_display[static_cast<size_t>(m_depth - level)];
        size_t off = static_cast<size_t>(n.slot->offset);
        if (off >= f.slots.size())
            fail(ErrorKind::Internal, n.loc, "slot offset past frame end");
        return f.slots[off];
    }

    int64_t address(const AstNode& n)
    {
        if (n.native || !n.slot)
            fail(ErrorKind::Internal, n.loc, "address of a native variable");
        const Frame& f = *m_display[static_cast<size_t>(m_depth - n.slot->level)];
        return f.base + n.slot->offset * 8;
    }

    int64_t& native(const std::string& name, SourceLoc loc)
    {
        auto& scope = m_natives.back();
        for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
            if (it->first == name)
                return it->second;
        }
        fail(ErrorKind::Internal, loc, "native '" + name + "' outside its loop");
    }

    Value zero(const FrozenType& t) const
    {
        switch (t.tag) {
        case TypeTag::Int: return of_int(0);
        case TypeTag::Real: return of_real(0.0);
        case TypeTag::Bool: return of_bool(false);
        default: return Value{};
        }
    }

    void store(const AstNode& target, Value v)
    {
        if (target.native)
            native(target.name, target.loc) = v.i();
        else
            slot(target) = std::move(v);
    }

    // -- statements ---------------------------------------------------------

    void block(const AstNode& n, size_t from, size_t to)
    {
        for (size_t i = from; i < to; ++i)
            stmt(*n.child(i));
    }

    bool truth(const AstNode& cond)
    {
        Value v = expr(cond);
        const FrozenType& t = type_of(cond);
        if (t.is(TypeTag::Real))
            return v.r() != 0.0;
        return v.i() != 0;
    }

    void stmt(const AstNode& s)
    {
        switch (s.kind) {
        case NodeKind::Declaration:
            if (!s.native)
                slot(s) = zero(type_of(s));
            break;
        case NodeKind::FunctionDef:
            slot(s) = make_closure(s);
            break;
        case NodeKind::Assign:
            store(*s.child(0), expr(*s.child(1)));
            break;
        case NodeKind::IndexAssign: {
            Value v = expr(*s.child(2));
            int64_t idx = expr(*s.child(1)).i();
            Value base = expr(*s.child(0));
            Vec& vec = base.vec();
            check_index(idx, vec.size(), s.loc);
            vec[static_cast<size_t>(idx)] = std::move(v);
            break;
        }
        case NodeKind::AttrAssign: {
            const AstNode& val = *s.child(1);
            double x = num(expr(val), type_of(val));
            Value base = expr(*s.child(0));
            (s.name == "real" ? base.c().re : base.c().im) = x;
            break;
        }
        case NodeKind::If: {
            size_t then_end = 1 + static_cast<size_t>(s.count);
            if (truth(*s.child(0)))
                block(s, 1, then_end);
            else
                block(s, then_end, s.children.size());
            break;
        }
        case NodeKind::While:
            while (truth(*s.child(0)))
                block(s, 1, s.children.size());
            break;
        case NodeKind::ForRange:
            for_range(s);
            break;
        case NodeKind::Return:
            m_result = s.children.empty() ? Value{} : expr(*s.child(0));
            throw ReturnSignal{};
        case NodeKind::Print: {
            // Each argument is written as soon as it is evaluated.
            for (size_t i = 0; i < s.children.size(); ++i) {
                if (i)
                    m_out += ' ';
                Value v = expr(*s.child(i));
                m_out += show(v, type_of(*s.child(i)));
            }
            m_out += '\n';
            break;
        }
        case NodeKind::ExprStmt:
            expr(*s.child(0));
            break;
        case NodeKind::Nonlocal:
        case NodeKind::Pass:
            break;
        default:
            fail(ErrorKind::Internal, s.loc, "unexpected statement " + std::string(node_kind_name(s.kind)));
        }
    }

    // The step is evaluated before the bound on every test, and again for the
    // increment, exactly as the FOR mnemonic expands.
    void for_range(const AstNode& s)
    {
        const AstNode& target = *s.child(0);
        int64_t v = expr(*s.child(1)).i();
        if (target.native)
            m_natives.back().emplace_back(target.name, 0);
        for (;;) {
            int64_t step = expr(*s.child(3)).i();
            int64_t end = expr(*s.child(2)).i();
            if (!(step > 0 ? v < end : v > end))
                break;
            if (target.native)
                native(target.name, target.loc) = v;
            else
                slot(target) = of_int(v);
            try {
                block(s, 4, s.children.size());
            } catch (const ReturnSignal&) {
                if (target.native)
                    m_natives.back().pop_back();
                throw;
            }
            v = wrap(static_cast<uint64_t>(v) + static_cast<uint64_t>(expr(*s.child(3)).i()));
        }
        if (target.native)
            m_natives.back().pop_back();
    }

    // -- functions ----------------------------------------------------------

    Value make_closure(const AstNode& fn)
    {
        auto c = std::make_shared<Closure>();
        c->fn = &fn;
        c->env.assign(m_display.begin(), m_display.begin() + m_depth + 1);
        return Value{c};
    }

    Value apply(const Closure& c, std::vector<Value> args, SourceLoc loc)
    {
        const AstNode& fn = *c.fn;
        if (fn.children.empty() && fn.kind == NodeKind::LambdaExpr)
            fail(ErrorKind::Internal, loc, "call of a function that was never typed");
        if (m_call_depth > 5000)
            trap(Trap::HeapExhausted, "call depth exhausted", loc);
        int depth = static_cast<int>(c.env.size());
        FramePtr f = new_frame(fn);
        for (size_t i = 0; i < args.size(); ++i)
            f->slots.at(i) = std::move(args[i]);

        auto saved_display = m_display;
        int saved_depth = m_depth;
        m_display.assign(c.env.begin(), c.env.end());
        m_display.push_back(f);
        m_depth = depth;
        m_natives.emplace_back();
        ++m_call_depth;

        Value result;
        try {
            if (fn.kind == NodeKind::LambdaExpr) {
                result = expr(*fn.children.back());
            } else {
                block(fn, static_cast<size_t>(fn.count), fn.children.size());
            }
        } catch (const ReturnSignal&) {
            result = std::move(m_result);
        }
        --m_call_depth;
        m_natives.pop_back();
        m_display = std::move(saved_display);
        m_depth = saved_depth;
        return result;
    }

    // -- expressions --------------------------------------------------------

    void check_index(int64_t idx, size_t len, SourceLoc loc)
    {
        if (idx < 0 || static_cast<uint64_t>(idx) >= len)
            trap(Trap::IndexOutOfRange,
                 "index " + std::to_string(idx) + " out of range for length " + std::to_string(len), loc);
    }

    void check_alloc(size_t bytes, SourceLoc loc)
    {
        if (bytes > m_opts.heap_bytes)
            trap(Trap::HeapExhausted, "allocation of " + std::to_string(bytes) + " bytes", loc);
    }

    Value expr(const AstNode& e)
    {
        switch (e.kind) {
        case NodeKind::Literal: return literal(e);
        case NodeKind::Identifier:
            if (e.native)
                return of_int(native(e.name, e.loc));
            return slot(e);
        case NodeKind::ListLit: {
            check_alloc(e.children.size() * 8, e.loc);
            Vec v;
            for (auto& c : e.children)
                v.push_back(expr(*c));
            return of_vec(std::move(v));
        }
        case NodeKind::BinOp: return binop(e);
        case NodeKind::UnOp: return unop(e);
        case NodeKind::Compare: return of_bool(compare(e));
        case NodeKind::BoolOp: {
            bool l = expr(*e.child(0)).b();
            if (e.op == "and")
                return of_bool(l && expr(*e.child(1)).b());
            return of_bool(l || expr(*e.child(1)).b());
        }
        case NodeKind::Index: {
            Value base = expr(*e.child(0));
            int64_t idx = expr(*e.child(1)).i();
            if (type_of(*e.child(0)).is(TypeTag::String)) {
                const std::string& s = base.s();
                check_index(idx, s.size(), e.loc);
                return of_str(std::string(1, s[static_cast<size_t>(idx)]));
            }
            Vec& v = base.vec();
            check_index(idx, v.size(), e.loc);
            return v[static_cast<size_t>(idx)];
        }
        case NodeKind::Attr: {
            Value base = expr(*e.child(0));
            return of_real(e.name == "real" ? base.c().re : base.c().im);
        }
        case NodeKind::Ref:
            return of_int(address(*e.child(0)));
        case NodeKind::LambdaExpr:
            return make_closure(e);
        case NodeKind::Call:
            return e.is_builtin_call() ? builtin(e) : call(e);
        default:
            fail(ErrorKind::Internal, e.loc, "unexpected expression " + std::string(node_kind_name(e.kind)));
        }
    }

    Value literal(const AstNode& e)
    {
        const Literal& l = e.lit;
        switch (l.kind) {
        case LitKind::Int: return of_int(wrap(static_cast<uint64_t>(l.ival)));
        case LitKind::Real: return of_real(R(l.rval));
        case LitKind::Bool: return of_bool(l.bval);
        case LitKind::String: return of_str(l.sval);
        case LitKind::Imag: return of_complex(0.0, R(l.rval));
        case LitKind::None: return Value{};
        }
        return Value{};
    }

    Value call(const AstNode& e)
    {
        Value callee = expr(*e.child(0));
        std::vector<Value> args;
        for (size_t i = 1; i < e.children.size(); ++i)
            args.push_back(expr(*e.child(i)));
        return apply(callee.fn(), std::move(args), e.loc);
    }

    Value builtin(const AstNode& e)
    {
        if (e.name == "id")
            return of_int(address(*e.child(0)));
        const AstNode& a = *e.child(0);
        const FrozenType& t = type_of(a);
        Value v = expr(a);
        if (e.name == "len")
            return of_int(static_cast<int64_t>(t.is(TypeTag::String) ? v.s().size() : v.vec().size()));
        if (e.name == "str")
            return of_str(show(v, t));
        if (e.name == "float") {
            if (t.is(TypeTag::String))
                return of_real(R(parse_float(v.s(), e.loc)));
            return of_real(num(v, t));
        }
        // int()
        if (t.is(TypeTag::String))
            return of_int(parse_int(v.s(), e.loc));
        if (t.is(TypeTag::Real))
            return of_int(real_to_int(v.r(), e.loc));
        return of_int(v.i());
    }

    int64_t real_to_int(double x, SourceLoc loc)
    {
        if (!std::isfinite(x))
            trap(Trap::Value, "cannot convert " + format_real(x) + " to int", loc);
        double t = std::trunc(x);
        if (t >= -9223372036854775808.0 && t < 9223372036854775808.0)
            return wrap(static_cast<uint64_t>(static_cast<int64_t>(t)));
        double m = std::fmod(t, 18446744073709551616.0);
        if (m < 0)
            m += 18446744073709551616.0;
        return wrap(static_cast<uint64_t>(m));
    }

    static std::string strip(const std::string& s)
    {
        size_t b = s.find_first_not_of(" \t\n\r\f\v");
        if (b == std::string::npos)
            return "";
        size_t e = s.find_last_not_of(" \t\n\r\f\v");
        return s.substr(b, e - b + 1);
    }

    int64_t parse_int(const std::string& text, SourceLoc loc)
    {
        std::string s = strip(text);
        size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            neg = s[i++] == '-';
        if (i == s.size())
            trap(Trap::Value, "invalid literal for int(): " + repr_string(text), loc);
        uint64_t v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                trap(Trap::Value, "invalid literal for int(): " + repr_string(text), loc);
            v = v * 10 + static_cast<uint64_t>(s[i] - '0');
        }
        return wrap(neg ? 0 - v : v);
    }

    double parse_float(const std::string& text, SourceLoc loc)
    {
        std::string s = strip(text);
        char* end = nullptr;
        double v = s.empty() ? 0.0 : std::strtod(s.c_str(), &end);
        bool hex = s.find('x') != std::string::npos || s.find('X') != std::string::npos;
        if (s.empty() || hex || end != s.c_str() + s.size())
            trap(Trap::Value, "could not convert string to float: " + repr_string(text), loc);
        return v;
    }

    Value unop(const AstNode& e)
    {
        const AstNode& a = *e.child(0);
        const FrozenType& t = type_of(a);
        Value v = expr(a);
        if (e.op == "not") {
            if (t.is(TypeTag::Real))
                return of_bool(v.r() == 0.0);
            return of_bool(v.i() == 0);
        }
        bool neg = e.op == "-";
        if (t.is_integral())
            return of_int(neg ? wrap(0 - static_cast<uint64_t>(v.i())) : v.i());
        if (t.is(TypeTag::Real))
            return of_real(neg ? -v.r() : v.r());
        Complex c = v.c();
        return neg ? of_complex(-c.re, -c.im) : of_complex(c.re, c.im);
    }

    Value binop(const AstNode& e)
    {
        const AstNode& an = *e.child(0);
        const AstNode& bn = *e.child(1);
        const FrozenType& at = type_of(an);
        const FrozenType& bt = type_of(bn);
        const FrozenType& rt = type_of(e);
        Value a = expr(an);
        Value b = expr(bn);
        const std::string& op = e.op;

        if (rt.is(TypeTag::Int)) {
            uint64_t x = static_cast<uint64_t>(a.i()), y = static_cast<uint64_t>(b.i());
            if (op == "+")
                return of_int(wrap(x + y));
            if (op == "-")
                return of_int(wrap(x - y));
            if (op == "*")
                return of_int(wrap(x * y));
            if (op == "%") {
                if (b.i() == 0)
                    trap(Trap::DivByZero, "integer modulo by zero", e.loc);
                return of_int(floor_mod(a.i(), b.i(), m_width));
            }
            if (op == "**") {
                if (b.i() < 0)
                    trap(Trap::Value, "negative int exponent", e.loc);
                return of_int(int_pow(a.i(), b.i(), m_width));
            }
        }
        if (rt.is(TypeTag::Real)) {
            double x = num(a, at), y = num(b, bt);
            if (op == "+")
                return of_real(R(x + y));
            if (op == "-")
                return of_real(R(x - y));
            if (op == "*")
                return of_real(R(x * y));
            if (op == "/") {
                if (y == 0.0)
                    trap(Trap::DivByZero, "division by zero", e.loc);
                return of_real(R(x / y));
            }
            if (op == "%") {
                if (y == 0.0)
                    trap(Trap::DivByZero, "real modulo by zero", e.loc);
                double m = std::fmod(x, y);
                if (m != 0.0) {
                    if ((y < 0) != (m < 0))
                        m = R(m + y);
                } else {
                    m = std::copysign(0.0, y);
                }
                return of_real(m);
            }
            if (op == "**") {
                if (x == 0.0 && y < 0.0)
                    trap(Trap::DivByZero, "0.0 cannot be raised to a negative power", e.loc);
                double p = R(std::pow(x, y));
                if (std::isnan(p) && !std::isnan(x) && !std::isnan(y))
                    trap(Trap::Value, "real power has no real result", e.loc);
                return of_real(p);
            }
        }
        if (rt.is(TypeTag::Complex)) {
            Complex x = cplx(a, at), y = cplx(b, bt);
            if (op == "+")
                return of_complex(R(x.re + y.re), R(x.im + y.im));
            if (op == "-")
                return of_complex(R(x.re - y.re), R(x.im - y.im));
            if (op == "*")
                return of_complex(R(R(x.re * y.re) - R(x.im * y.im)), R(R(x.re * y.im) + R(x.im * y.re)));
            if (op == "/")
                return complex_div(x, y, e.loc);
        }
        if (rt.is(TypeTag::String)) {
            if (op == "+") {
                check_alloc(a.s().size() + b.s().size(), e.loc);
                return of_str(a.s() + b.s());
            }
            bool left = at.is(TypeTag::String);
            const std::string& s = left ? a.s() : b.s();
            int64_t n = left ? b.i() : a.i();
            std::string out;
            if (n > 0) {
                check_alloc(s.size() * static_cast<size_t>(n), e.loc);
                for (int64_t i = 0; i < n; ++i)
                    out += s;
            }
            return of_str(std::move(out));
        }
        if (rt.is(TypeTag::Vector)) {
            if (op == "+") {
                Vec v = a.vec();
                check_alloc((v.size() + b.vec().size()) * 8, e.loc);
                v.insert(v.end(), b.vec().begin(), b.vec().end());
                return of_vec(std::move(v));
            }
            bool left = at.is(TypeTag::Vector);
            const Vec& s = left ? a.vec() : b.vec();
            int64_t n = left ? b.i() : a.i();
            Vec out;
            if (n > 0) {
                check_alloc(s.size() * static_cast<size_t>(n) * 8, e.loc);
                for (int64_t i = 0; i < n; ++i)
                    out.insert(out.end(), s.begin(), s.end());
            }
            return of_vec(std::move(out));
        }
        fail(ErrorKind::Internal, e.loc, "no evaluation rule for " + op + " giving " + to_string(rt));
    }

    Value complex_div(Complex a, Complex b, SourceLoc loc)
    {
        if (b.re == 0.0 && b.im == 0.0)
            trap(Trap::DivByZero, "complex division by zero", loc);
        double abs_re = std::fabs(b.re), abs_im = std::fabs(b.im);
        if (abs_re >= abs_im) {
            double ratio = R(b.im / b.re);
            double denom = R(b.re + R(b.im * ratio));
            return of_complex(R(R(a.re + R(a.im * ratio)) / denom), R(R(a.im - R(a.re * ratio)) / denom));
        }
        if (abs_im >= abs_re) {
            double ratio = R(b.re / b.im);
            double denom = R(R(b.re * ratio) + b.im);
            return of_complex(R(R(R(a.re * ratio) + a.im) / denom), R(R(R(a.im * ratio) - a.re) / denom));
        }
        return of_complex(NAN, NAN);
    }

    bool compare(const AstNode& e)
    {
        const AstNode& an = *e.child(0);
        const AstNode& bn = *e.child(1);
        const FrozenType& at = type_of(an);
        const FrozenType& bt = type_of(bn);
        Value a = expr(an);
        Value b = expr(bn);
        const std::string& op = e.op;
        int c = 0;
        if (at.is(TypeTag::String)) {
            int r = a.s().compare(b.s());
            c = r < 0 ? -1 : r > 0 ? 1 : 0;
        } else if (at.is(TypeTag::Complex) || bt.is(TypeTag::Complex)) {
            Complex x = cplx(a, at), y = cplx(b, bt);
            bool eq = x.re == y.re && x.im == y.im;
            return op == "==" ? eq : !eq;
        } else if (at.is_integral() && bt.is_integral()) {
            c = a.i() < b.i() ? -1 : a.i() > b.i() ? 1 : 0;
        } else {
            double x = num(a, at), y = num(b, bt);
            if (op == "==")
                return x == y;
            if (op == "!=")
                return x != y;
            if (op == "<")
                return x < y;
            if (op == "<=")
                return x <= y;
            if (op == ">")
                return x > y;
            return x >= y;
        }
        if (op == "==")
            return c == 0;
        if (op == "!=")
            return c != 0;
        if (op == "<")
            return c < 0;
        if (op == "<=")
            return c <= 0;
        if (op == ">")
            return c > 0;
        return c >= 0;
    }

    // -- printing -----------------------------------------------------------

    std::string show(const Value& v, const FrozenType& t, bool nested = false) const
    {
        bool r32 = m_opts.compile.real32();
        switch (t.tag) {
        case TypeTag::Int: return std::to_string(v.i());
        case TypeTag::Bool: return v.i() ? "True" : "False";
        case TypeTag::Real: return format_real(v.r(), r32);
        case TypeTag::Complex: return format_complex(v.c().re, v.c().im, r32);
        case TypeTag::String: return nested ? repr_string(v.s()) : v.s();
        case TypeTag::None: return "None";
        case TypeTag::Vector: {
            std::string s = "[";
            const Vec& vec = v.vec();
            for (size_t i = 0; i < vec.size(); ++i) {
                if (i)
                    s += ", ";
                s += show(vec[i], t.elem(), true);
            }
            return s + "]";
        }
        case TypeTag::Lambda: return "<function>";
        }
        return "?";
    }

    const OracleOptions& m_opts;
    int m_width;
    std::unordered_map<const AstNode*, size_t> m_frame_size;
    std::vector<FramePtr> m_display;
    int m_depth = 0;
    std::vector<std::vector<std::pair<std::string, int64_t>>> m_natives;
    int64_t m_next_base = 4096;
    int m_call_depth = 0;
    Value m_result;
    std::string m_out;
};

}  // namespace

RunResult interpret(const AstNode& root, const OracleOptions& opts)
{
    return Interpreter(opts).run(root);
}

}  // namespace vpy
