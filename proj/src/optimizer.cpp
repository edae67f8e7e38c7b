#include "vpy/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace vpy {

int64_t int_pow(int64_t base, int64_t exp, int width)
{
    uint64_t result = 1;
    uint64_t b = static_cast<uint64_t>(base);
    while (exp > 0) {
        if (exp & 1)
            result *= b;
        b *= b;
        exp >>= 1;
    }
    return wrap_int(static_cast<int64_t>(result), width);
}

int64_t floor_mod(int64_t a, int64_t b, int width)
{
    if (b == -1)
        return 0;
    int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        r += b;
    return wrap_int(r, width);
}

namespace {

class Lowerer {
public:
    void function(AstNode& owner, int depth)
    {
        std::vector<AstNode*> loops;
        collect_loops(owner, loops);
        std::set<int> removed;
        for (AstNode* loop : loops)
            removed.insert(lower(*loop, depth));
        if (!removed.empty()) {
            for (auto& c : owner.children)
                remap(*c, depth, depth, removed);
        }
        nested(owner, depth);
    }

private:
    void collect_loops(AstNode& n, std::vector<AstNode*>& out)
    {
        for (auto& c : n.children) {
            if (c->is_function() || !is_statement(c->kind))
                continue;
            if (c->kind == NodeKind::ForRange && !c->native)
                out.push_back(c.get());
            collect_loops(*c, out);
        }
    }

    void nested(AstNode& n, int depth)
    {
        for (auto& c : n.children) {
            if (c->is_function())
                function(*c, depth + 1);
            else
                nested(*c, depth);
        }
    }

    int lower(AstNode& loop, int depth)
    {
        AstNode& target = *loop.child(0);
        if (!target.slot)
            fail(ErrorKind::Internal, loop.loc, "loop variable '" + target.name + "' has no slot");
        int offset = target.slot->offset;
        for (size_t i = 4; i < loop.children.size(); ++i)
            mark(*loop.child(i), target, offset, depth, depth, loop.child(i)->loc);
        loop.native = true;
        target.native = true;
        target.slot.reset();
        return offset;
    }

    // Marks every read of the induction variable native, rejecting writes and
    // any use that needs the variable's frame address.
    void mark(AstNode& n, const AstNode& target, int offset, int depth, int cur, SourceLoc stmt)
    {
        if (is_statement(n.kind) && n.loc.valid())
            stmt = n.loc;
        auto refers = [&](const AstNode& id) {
            return id.kind == NodeKind::Identifier && !id.native && id.slot && id.slot->offset == offset &&
                   id.slot->level == cur - depth;
        };
        auto here = [&](const AstNode& x) { return x.loc.valid() ? x.loc : stmt; };
        switch (n.kind) {
        case NodeKind::Assign:
        case NodeKind::IndexAssign:
        case NodeKind::AttrAssign:
            if (n.kind == NodeKind::Assign && refers(*n.child(0)))
                fail(ErrorKind::IteratorMutation, here(n),
                     "loop variable '" + target.name + "' is immutable inside its loop");
            break;
        case NodeKind::Ref:
            if (refers(*n.child(0)))
                fail(ErrorKind::IteratorEscape, here(n),
                     "cannot take the address of loop variable '" + target.name + "'");
            break;
        case NodeKind::Call:
            if (n.is_builtin_call() && n.name == "id" && !n.children.empty() && refers(*n.child(0)))
                fail(ErrorKind::IteratorEscape, here(n), "id() of loop variable '" + target.name + "'");
            break;
        case NodeKind::Identifier:
            if (refers(n)) {
                if (cur != depth)
                    fail(ErrorKind::IteratorEscape, here(n),
                         "loop variable '" + target.name + "' is captured by a nested function");
                n.native = true;
                n.slot.reset();
            }
            return;
        default:
            break;
        }
        int inner = n.is_function() ? cur + 1 : cur;
        for (auto& c : n.children)
            mark(*c, target, offset, depth, inner, stmt);
    }

    static int shifted(int offset, const std::set<int>& removed)
    {
        auto below = std::distance(removed.begin(), removed.lower_bound(offset));
        return offset - static_cast<int>(below);
    }

    void remap(AstNode& n, int depth, int cur, const std::set<int>& removed)
    {
        bool own_binding = (n.kind == NodeKind::Declaration || n.kind == NodeKind::FunctionDef) && cur == depth;
        if (n.slot && !n.native) {
            if (own_binding || (n.kind == NodeKind::Identifier && n.slot->level == cur - depth))
                n.slot->offset = shifted(n.slot->offset, removed);
        }
        int inner = n.is_function() ? cur + 1 : cur;
        for (auto& c : n.children)
            remap(*c, depth, inner, removed);
    }
};

class Folder {
public:
    explicit Folder(const CompileOptions& opts) : m_opts(opts) {}

    void fold(NodePtr& n)
    {
        for (auto& c : n->children)
            fold(c);
        std::optional<Literal> v;
        switch (n->kind) {
        case NodeKind::BinOp: v = binop(*n); break;
        case NodeKind::UnOp: v = unop(*n); break;
        case NodeKind::Call: v = length(*n); break;
        default: break;
        }
        if (!v)
            return;
        auto lit = make_literal(*v, n->loc);
        lit->type = n->type;
        n = std::move(lit);
    }

private:
    static bool is_lit(const AstNode& n, LitKind k)
    {
        return n.kind == NodeKind::Literal && n.lit.kind == k;
    }

    std::optional<Literal> binop(const AstNode& n)
    {
        const AstNode& a = *n.child(0);
        const AstNode& b = *n.child(1);
        if (is_lit(a, LitKind::Int) && is_lit(b, LitKind::Int)) {
            int w = m_opts.int_width;
            uint64_t x = static_cast<uint64_t>(a.lit.ival), y = static_cast<uint64_t>(b.lit.ival);
            if (n.op == "+")
                return Literal::of_int(wrap_int(static_cast<int64_t>(x + y), w));
            if (n.op == "-")
                return Literal::of_int(wrap_int(static_cast<int64_t>(x - y), w));
            if (n.op == "*")
                return Literal::of_int(wrap_int(static_cast<int64_t>(x * y), w));
            if (n.op == "%" && b.lit.ival != 0)
                return Literal::of_int(floor_mod(a.lit.ival, b.lit.ival, w));
            if (n.op == "**" && b.lit.ival >= 0)
                return Literal::of_int(int_pow(a.lit.ival, b.lit.ival, w));
            if (n.op == "/" && b.lit.ival != 0 && !m_opts.real32())
                return real(static_cast<double>(a.lit.ival) / static_cast<double>(b.lit.ival));
            return std::nullopt;
        }
        if (m_opts.real32())
            return std::nullopt;
        auto num = [](const AstNode& x) -> std::optional<double> {
            if (is_lit(x, LitKind::Real))
                return x.lit.rval;
            if (is_lit(x, LitKind::Int))
                return static_cast<double>(x.lit.ival);
            return std::nullopt;
        };
        auto x = num(a), y = num(b);
        if (!x || !y || !(is_lit(a, LitKind::Real) || is_lit(b, LitKind::Real)))
            return std::nullopt;
        if (n.op == "+")
            return real(*x + *y);
        if (n.op == "-")
            return real(*x - *y);
        if (n.op == "*")
            return real(*x * *y);
        if (n.op == "/" && *y != 0.0)
            return real(*x / *y);
        return std::nullopt;
    }

    static std::optional<Literal> real(double v)
    {
        if (!std::isfinite(v))
            return std::nullopt;
        return Literal::of_real(v);
    }

    std::optional<Literal> unop(const AstNode& n)
    {
        const AstNode& a = *n.child(0);
        if (n.op == "-" && is_lit(a, LitKind::Int))
            return Literal::of_int(wrap_int(static_cast<int64_t>(0 - static_cast<uint64_t>(a.lit.ival)),
                                            m_opts.int_width));
        if (n.op == "-" && is_lit(a, LitKind::Real))
            return Literal::of_real(-a.lit.rval);
        return std::nullopt;
    }

    static std::optional<Literal> length(const AstNode& n)
    {
        if (!n.is_builtin_call() || n.name != "len" || n.children.size() != 1)
            return std::nullopt;
        const AstNode& list = *n.child(0);
        if (list.kind != NodeKind::ListLit)
            return std::nullopt;
        for (auto& e : list.children) {
            if (e->kind != NodeKind::Literal)
                return std::nullopt;
        }
        return Literal::of_int(static_cast<int64_t>(list.children.size()));
    }

    const CompileOptions& m_opts;
};

}  // namespace

void lower_for_range(AstNode& root)
{
    Lowerer().function(root, 0);
}

void fold_constants(AstNode& root, const CompileOptions& opts)
{
    Folder f(opts);
    for (auto& c : root.children)
        f.fold(c);
}

}  // namespace vpy
