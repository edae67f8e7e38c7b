#include "vpy/typeinfer.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "vpy/rules.hpp"

namespace vpy {

namespace {

constexpr int max_depth = 63;

// Inference-time type. Lambdas point at a signature in a union-find forest so
// that every place a function value flows shares one frozen signature.
struct IType {
    FrozenType ft;
    int sig = -1;
    bool pending = false;  // result of a call whose callee is still being inferred
    std::string pending_name;

    bool is_lambda() const { return ft.tag == TypeTag::Lambda; }
};

IType itype(TypeTag tag)
{
    return IType{FrozenType::scalar(tag)};
}

struct Scope;

struct FnInfo {
    AstNode* node = nullptr;
    Scope* defining = nullptr;
    int sig = -1;
    bool inferring = false;
    bool inferred = false;
};

struct Sig {
    int parent;
    size_t arity;
    std::optional<std::vector<IType>> params;
    std::optional<IType> result;
    std::vector<FnInfo*> fns;
};

using Env = std::map<std::string, AstNode*>;

struct Scope {
    AstNode* owner = nullptr;
    Scope* parent = nullptr;
    FnInfo* fn = nullptr;
    int depth = 0;
    std::set<std::string> locals;
    std::set<std::string> nonlocals;
    Env env;
    int next_offset = 0;
    std::vector<const Env*> loop_entries;
};

[[noreturn]] void type_error(SourceLoc loc, const std::string& msg)
{
    fail(ErrorKind::Type, loc, msg);
}

void collect_locals(const AstNode& n, size_t from, std::set<std::string>& out)
{
    for (size_t i = from; i < n.children.size(); ++i) {
        const AstNode& s = *n.child(i);
        switch (s.kind) {
        case NodeKind::Assign:
            out.insert(s.child(0)->name);
            break;
        case NodeKind::FunctionDef:
            out.insert(s.name);
            break;
        case NodeKind::ForRange:
            out.insert(s.child(0)->name);
            collect_locals(s, 4, out);
            break;
        case NodeKind::If:
        case NodeKind::While:
            collect_locals(s, 1, out);
            break;
        default:
            break;
        }
    }
}

bool block_terminates(const AstNode& n, size_t from, size_t to)
{
    for (size_t i = from; i < to; ++i) {
        const AstNode& s = *n.child(i);
        if (s.kind == NodeKind::Return)
            return true;
        if (s.kind == NodeKind::If) {
            size_t then_end = 1 + static_cast<size_t>(s.count);
            if (then_end < s.children.size() && block_terminates(s, 1, then_end) &&
                block_terminates(s, then_end, s.children.size()))
                return true;
        }
    }
    return false;
}

// Integer value of a literal-only expression, for the zero-step check.
std::optional<int64_t> constant_int(const AstNode& e)
{
    if (e.kind == NodeKind::Literal && e.lit.kind == LitKind::Int)
        return e.lit.ival;
    if (e.kind == NodeKind::UnOp && (e.op == "-" || e.op == "+")) {
        auto v = constant_int(*e.child(0));
        if (v)
            return e.op == "-" ? -*v : *v;
    }
    return std::nullopt;
}

class Inferencer {
public:
    explicit Inferencer(const CompileOptions& opts) : m_opts(opts) {}

    void run(AstNode& root)
    {
        if (root.kind != NodeKind::Module)
            fail(ErrorKind::Internal, root.loc, "infer expects a module");
        Scope& mod = new_scope(&root, nullptr, nullptr, 0);
        collect_locals(root, 0, mod.locals);
        m_scope = &mod;
        block(root.children);
        finish(root);
    }

private:
    // -- signatures ---------------------------------------------------------

    int find(int s)
    {
        while (m_sigs[s].parent != s) {
            m_sigs[s].parent = m_sigs[m_sigs[s].parent].parent;
            s = m_sigs[s].parent;
        }
        return s;
    }

    int new_sig(size_t arity)
    {
        int id = static_cast<int>(m_sigs.size());
        m_sigs.push_back(Sig{id, arity, std::nullopt, std::nullopt, {}});
        return id;
    }

    bool same(const IType& a, const IType& b)
    {
        if (a.pending || b.pending)
            return false;
        if (a.is_lambda() && b.is_lambda())
            return unify(a.sig, b.sig);
        return !a.is_lambda() && !b.is_lambda() && a.ft == b.ft;
    }

    bool unify(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return true;
        if (m_sigs[a].arity != m_sigs[b].arity)
            return false;
        auto pa = m_sigs[a].params, pb = m_sigs[b].params;
        auto ra = m_sigs[a].result, rb = m_sigs[b].result;
        if (pa && pb) {
            for (size_t i = 0; i < pa->size(); ++i) {
                if (!same((*pa)[i], (*pb)[i]))
                    return false;
            }
        }
        if (ra && rb && !same(*ra, *rb))
            return false;
        a = find(a);
        b = find(b);
        if (a == b)
            return true;
        m_sigs[b].parent = a;
        if (!m_sigs[a].params)
            m_sigs[a].params = pb;
        if (!m_sigs[a].result)
            m_sigs[a].result = rb;
        for (FnInfo* f : m_sigs[b].fns)
            m_sigs[a].fns.push_back(f);
        if (m_sigs[a].params)
            ensure_inferred(a);
        return true;
    }

    void ensure_inferred(int s)
    {
        s = find(s);
        // infer_body may grow the list through unification; index, don't iterate.
        for (size_t i = 0; i < m_sigs[find(s)].fns.size(); ++i) {
            FnInfo* f = m_sigs[find(s)].fns[i];
            if (!f->inferred && !f->inferring)
                infer_body(*f);
        }
    }

    bool sig_in_progress(int s)
    {
        for (FnInfo* f : m_sigs[find(s)].fns) {
            if (f->inferring)
                return true;
        }
        return false;
    }

    FrozenType frozen(const IType& t, int guard = 0)
    {
        if (!t.is_lambda())
            return t.ft;
        const Sig& s = m_sigs[find(t.sig)];
        if (!s.params || guard > 8)
            return FrozenType::unknown_lambda();
        std::vector<FrozenType> ps;
        for (auto& p : *s.params)
            ps.push_back(frozen(p, guard + 1));
        FrozenType r = s.result ? frozen(*s.result, guard + 1) : FrozenType::scalar(TypeTag::None);
        return FrozenType::lambda(std::move(ps), std::move(r));
    }

    std::string show(const IType& t)
    {
        if (t.pending)
            return "<unresolved call>";
        return to_string(frozen(t));
    }

    // -- scopes -------------------------------------------------------------

    Scope& new_scope(AstNode* owner, Scope* parent, FnInfo* fn, int depth)
    {
        m_scopes.emplace_back();
        Scope& s = m_scopes.back();
        s.owner = owner;
        s.parent = parent;
        s.fn = fn;
        s.depth = depth;
        return s;
    }

    Scope* nonlocal_owner(Scope& from, const std::string& name)
    {
        for (Scope* p = from.parent; p && p->depth > 0; p = p->parent) {
            if (p->nonlocals.count(name))
                return nonlocal_owner(*p, name);
            if (p->locals.count(name))
                return p;
        }
        return nullptr;
    }

    // The declaration a read of `name` binds to, or throws NameError.
    AstNode* lookup(const std::string& name, SourceLoc loc)
    {
        Scope* s = m_scope;
        if (s->nonlocals.count(name)) {
            Scope* owner = nonlocal_owner(*s, name);
            return bound_in(owner, name, loc, true);
        }
        if (s->locals.count(name)) {
            auto it = s->env.find(name);
            if (it == s->env.end())
                fail(ErrorKind::Name, loc, "local variable '" + name + "' referenced before assignment");
            return it->second;
        }
        for (Scope* p = s->parent; p; p = p->parent) {
            if (p->nonlocals.count(name))
                return bound_in(nonlocal_owner(*p, name), name, loc, true);
            if (p->locals.count(name))
                return bound_in(p, name, loc, true);
        }
        fail(ErrorKind::Name, loc, "name '" + name + "' is not defined");
    }

    AstNode* bound_in(Scope* owner, const std::string& name, SourceLoc loc, bool capture)
    {
        if (!owner)
            fail(ErrorKind::Nonlocal, loc, "no binding for nonlocal '" + name + "' found");
        auto it = owner->env.find(name);
        if (it == owner->env.end())
            fail(ErrorKind::Name, loc,
                 "free variable '" + name + "' referenced before assignment in enclosing scope");
        if (capture)
            m_captured.insert(it->second);
        return it->second;
    }

    int fresh_offset(Scope& s)
    {
        return s.next_offset++;
    }

    NodePtr new_declaration(const std::string& name, SourceLoc loc, const IType& t)
    {
        auto d = make_node(NodeKind::Declaration, loc);
        d->name = name;
        d->slot = SlotRef{0, fresh_offset(*m_scope)};
        d->scope_depth = m_scope->depth;
        m_types[d.get()] = t;
        return d;
    }

    void insert_before_current(NodePtr decl)
    {
        m_block->insert(m_block->begin() + static_cast<std::ptrdiff_t>(m_block_index), std::move(decl));
        ++m_block_index;
    }

    // -- statements ---------------------------------------------------------

    void block(std::vector<NodePtr>& stmts, size_t from = 0)
    {
        auto* saved_block = m_block;
        size_t saved_index = m_block_index;
        m_block = &stmts;
        for (m_block_index = from; m_block_index < stmts.size(); ++m_block_index)
            statement(*stmts[m_block_index]);
        m_block = saved_block;
        m_block_index = saved_index;
    }

    void statement(AstNode& s)
    {
        switch (s.kind) {
        case NodeKind::Assign: assign(s); break;
        case NodeKind::IndexAssign: index_assign(s); break;
        case NodeKind::AttrAssign: attr_assign(s); break;
        case NodeKind::If: if_stmt(s); break;
        case NodeKind::While: while_stmt(s); break;
        case NodeKind::ForRange: for_stmt(s); break;
        case NodeKind::FunctionDef: def_stmt(s); break;
        case NodeKind::Return: return_stmt(s); break;
        case NodeKind::Nonlocal: nonlocal_stmt(s); break;
        case NodeKind::Pass: break;
        case NodeKind::Print:
            for (auto& a : s.children) {
                IType t = value(*a);
                if (!printable(frozen(t)))
                    type_error(a->loc.valid() ? a->loc : s.loc, "cannot print a value of type " + show(t));
            }
            break;
        case NodeKind::ExprStmt:
            expr(*s.child(0), true);
            break;
        case NodeKind::Declaration:
            fail(ErrorKind::Internal, s.loc, "tree is already typed");
        default:
            fail(ErrorKind::Internal, s.loc, "unexpected statement kind");
        }
    }

    void nonlocal_stmt(AstNode& s)
    {
        if (m_scope->locals.count(s.name) && !m_scope->nonlocals.count(s.name))
            fail(ErrorKind::Nonlocal, s.loc, "name '" + s.name + "' is assigned before nonlocal declaration");
        if (!nonlocal_owner(*m_scope, s.name))
            fail(ErrorKind::Nonlocal, s.loc, "no binding for nonlocal '" + s.name + "' found");
    }

    // Binds `name` in the current scope to a value of type t, reusing the
    // current declaration when the type is unchanged. Returns the binding.
    AstNode* bind(const std::string& name, const IType& t, SourceLoc loc)
    {
        Scope& s = *m_scope;
        if (t.pending)
            type_error(loc, "cannot infer type of " + t.pending_name + "; annotate with int()/float()/str()");
        if (s.nonlocals.count(name)) {
            AstNode* d = bound_in(nonlocal_owner(s, name), name, loc, true);
            if (t.is_lambda())
                type_error(loc, "a function cannot be assigned to nonlocal '" + name + "'");
            if (!same(m_types.at(d), t))
                type_error(loc, "cannot retype nonlocal '" + name + "' from " + show(m_types.at(d)) + " to " +
                                    show(t));
            return d;
        }
        auto it = s.env.find(name);
        if (it != s.env.end() && same(m_types.at(it->second), t))
            return it->second;
        if (it != s.env.end()) {
            AstNode* old = it->second;
            if (m_loop_targets.count(old))
                fail(ErrorKind::IteratorMutation, loc, "loop variable '" + name + "' cannot be reassigned");
            if (m_captured.count(old))
                type_error(loc, "cannot retype '" + name + "' from " + show(m_types.at(old)) + " to " + show(t) +
                                    " after a nested function captured it");
            for (const Env* entry : s.loop_entries) {
                auto e = entry->find(name);
                if (e != entry->end() && e->second == old)
                    type_error(loc, "loop-carried retype of '" + name + "' from " + show(m_types.at(old)) +
                                        " to " + show(t));
            }
        }
        // An else branch reuses the declaration its then branch made.
        for (auto sib = m_siblings.rbegin(); sib != m_siblings.rend(); ++sib) {
            if (sib->first != &s)
                break;
            auto found = sib->second.find(name);
            if (found != sib->second.end() && same(m_types.at(found->second), t)) {
                s.env[name] = found->second;
                return found->second;
            }
        }
        auto decl = new_declaration(name, loc, t);
        AstNode* d = decl.get();
        insert_before_current(std::move(decl));
        s.env[name] = d;
        return d;
    }

    void bind_ident(AstNode& ident, AstNode* decl)
    {
        ident.decl = decl;
        ident.scope_depth = m_scope->depth;
        m_types[&ident] = m_types.at(decl);
    }

    void assign(AstNode& s)
    {
        AstNode& target = *s.child(0);
        IType t = value(*s.child(1));
        AstNode* d = bind(target.name, t, s.loc);
        bind_ident(target, d);
    }

    void index_assign(AstNode& s)
    {
        AstNode& target = *s.child(0);
        bind_ident(target, lookup(target.name, target.loc.valid() ? target.loc : s.loc));
        IType base = m_types.at(&target);
        IType idx = value(*s.child(1));
        IType val = value(*s.child(2));
        if (base.ft.is(TypeTag::String))
            type_error(s.loc, "strings are immutable; cannot assign to an element of '" + target.name + "'");
        if (!base.ft.is(TypeTag::Vector))
            type_error(s.loc, "'" + target.name + "' is " + show(base) + ", not a vector");
        if (!idx.ft.is_integral())
            type_error(s.loc, "index must be int");
        if (!(val.ft == base.ft.elem()) || val.is_lambda())
            type_error(s.loc, "cannot store " + show(val) + " into " + show(base));
    }

    void attr_assign(AstNode& s)
    {
        AstNode& target = *s.child(0);
        bind_ident(target, lookup(target.name, target.loc.valid() ? target.loc : s.loc));
        IType base = m_types.at(&target);
        IType val = value(*s.child(1));
        if (!base.ft.is(TypeTag::Complex))
            type_error(s.loc, "." + s.name + " assignment needs a complex value, '" + target.name + "' is " +
                                  show(base));
        if (!attr_store_ok(val.ft) || val.is_lambda())
            type_error(s.loc, "cannot store " + show(val) + " into ." + s.name);
    }

    void condition(AstNode& e, SourceLoc loc)
    {
        IType t = value(e);
        if (!condition_ok(t.ft) || t.is_lambda())
            type_error(e.loc.valid() ? e.loc : loc, "condition must be bool, int or real, got " + show(t));
    }

    void if_stmt(AstNode& s)
    {
        Scope& sc = *m_scope;
        condition(*s.child(0), s.loc);
        size_t then_end = 1 + static_cast<size_t>(s.count);
        std::vector<NodePtr> then_b, else_b;
        for (size_t i = 1; i < s.children.size(); ++i)
            (i < then_end ? then_b : else_b).push_back(std::move(s.children[i]));
        s.children.resize(1);

        Env pre = sc.env;
        block(then_b);
        Env then_env = sc.env;
        bool then_term = block_terminates_list(then_b);

        std::map<std::string, AstNode*> made;
        for (auto& [name, d] : then_env) {
            auto p = pre.find(name);
            if (p == pre.end() || p->second != d)
                made[name] = d;
        }
        sc.env = pre;
        m_siblings.emplace_back(&sc, std::move(made));
        block(else_b);
        m_siblings.pop_back();
        Env else_env = sc.env;
        bool else_term = !else_b.empty() && block_terminates_list(else_b);

        if (then_term && else_term) {
            sc.env = pre;
        } else if (then_term) {
            sc.env = else_env;
        } else if (else_term) {
            sc.env = then_env;
        } else {
            Env joined;
            for (auto& [name, d] : then_env) {
                auto e = else_env.find(name);
                if (e == else_env.end())
                    continue;
                if (e->second == d) {
                    joined[name] = d;
                    continue;
                }
                if (!same(m_types.at(d), m_types.at(e->second)))
                    type_error(s.loc, "'" + name + "' is " + show(m_types.at(d)) + " after the if branch but " +
                                          show(m_types.at(e->second)) + " after the else branch");
                type_error(s.loc, "'" + name + "' is bound to different declarations on the two branches");
            }
            sc.env = std::move(joined);
        }

        s.count = static_cast<int>(then_b.size());
        for (auto& c : then_b)
            s.children.push_back(std::move(c));
        for (auto& c : else_b)
            s.children.push_back(std::move(c));
    }

    static bool block_terminates_list(const std::vector<NodePtr>& stmts)
    {
        for (auto& s : stmts) {
            if (s->kind == NodeKind::Return)
                return true;
            if (s->kind == NodeKind::If) {
                size_t then_end = 1 + static_cast<size_t>(s->count);
                if (then_end < s->children.size() && block_terminates(*s, 1, then_end) &&
                    block_terminates(*s, then_end, s->children.size()))
                    return true;
            }
        }
        return false;
    }

    void loop_body(AstNode& s, size_t from, const Env& entry)
    {
        Scope& sc = *m_scope;
        std::vector<NodePtr> body;
        for (size_t i = from; i < s.children.size(); ++i)
            body.push_back(std::move(s.children[i]));
        s.children.resize(from);
        sc.loop_entries.push_back(&entry);
        block(body);
        sc.loop_entries.pop_back();
        for (auto& c : body)
            s.children.push_back(std::move(c));
    }

    void while_stmt(AstNode& s)
    {
        Scope& sc = *m_scope;
        condition(*s.child(0), s.loc);
        Env pre = sc.env;
        loop_body(s, 1, pre);
        sc.env = std::move(pre);
    }

    void for_stmt(AstNode& s)
    {
        Scope& sc = *m_scope;
        AstNode& target = *s.child(0);
        if (sc.env.count(target.name) || sc.nonlocals.count(target.name))
            type_error(s.loc, "loop variable '" + target.name + "' must be a fresh name");
        const char* part[] = {"start", "end", "step"};
        for (size_t i = 1; i <= 3; ++i) {
            IType t = value(*s.child(i));
            if (!t.ft.is_integral() || t.is_lambda())
                type_error(s.loc, std::string("range() ") + part[i - 1] + " must be int, got " + show(t));
        }
        auto step = constant_int(*s.child(3));
        if (step && *step == 0)
            type_error(s.loc, "range() step must not be zero");

        target.slot = SlotRef{0, fresh_offset(sc)};
        target.scope_depth = sc.depth;
        m_types[&target] = itype(TypeTag::Int);
        m_loop_targets.insert(&target);
        Env pre = sc.env;
        sc.env[target.name] = &target;
        loop_body(s, 4, pre);
        sc.env = std::move(pre);
    }

    void def_stmt(AstNode& s)
    {
        Scope& sc = *m_scope;
        if (sc.depth + 1 > max_depth)
            type_error(s.loc, "functions nested deeper than " + std::to_string(max_depth) + " levels");
        FnInfo& fn = new_fn(s);
        IType t{FrozenType::unknown_lambda(), fn.sig};
        auto it = sc.env.find(s.name);
        if (it != sc.env.end()) {
            AstNode* old = it->second;
            if (m_loop_targets.count(old))
                fail(ErrorKind::IteratorMutation, s.loc, "loop variable '" + s.name + "' cannot be reassigned");
            if (m_captured.count(old))
                type_error(s.loc, "cannot rebind '" + s.name + "' after a nested function captured it");
            for (const Env* entry : sc.loop_entries) {
                auto e = entry->find(s.name);
                if (e != entry->end() && e->second == old)
                    type_error(s.loc, "loop-carried rebinding of '" + s.name + "'");
            }
        }
        s.slot = SlotRef{0, fresh_offset(sc)};
        s.scope_depth = sc.depth;
        m_types[&s] = t;
        sc.env[s.name] = &s;
    }

    FnInfo& new_fn(AstNode& node)
    {
        m_fns.emplace_back();
        FnInfo& fn = m_fns.back();
        fn.node = &node;
        fn.defining = m_scope;
        fn.sig = new_sig(static_cast<size_t>(node.count));
        m_sigs[fn.sig].fns.push_back(&fn);
        return fn;
    }

    void return_stmt(AstNode& s)
    {
        Scope& sc = *m_scope;
        if (!sc.fn)
            fail(ErrorKind::Parse, s.loc, "'return' outside function");
        IType t = s.children.empty() ? itype(TypeTag::None) : expr(*s.child(0), true);
        record_return(sc, t, s.children.empty() ? s.loc : (s.child(0)->loc.valid() ? s.child(0)->loc : s.loc));
    }

    void record_return(Scope& sc, const IType& t, SourceLoc loc)
    {
        int sig = find(sc.fn->sig);
        if (t.pending) {
            if (find(t.sig) == sig)
                return;
            type_error(loc, "cannot infer type of " + t.pending_name + "; annotate with int()/float()/str()");
        }
        if (t.is_lambda())
            type_error(loc, "a function cannot be returned from a function");
        auto& result = m_sigs[sig].result;
        if (!result) {
            result = t;
            return;
        }
        if (!same(*result, t))
            type_error(loc, "function returns both " + show(*result) + " and " + show(t));
    }

    // -- function bodies ----------------------------------------------------

    void infer_body(FnInfo& fn)
    {
        AstNode& node = *fn.node;
        Scope& sc = new_scope(&node, fn.defining, &fn, fn.defining->depth + 1);
        const Sig& sig = m_sigs[find(fn.sig)];
        if (!sig.params)
            fail(ErrorKind::Internal, node.loc, "function inferred before its parameters are known");
        std::vector<IType> params = *sig.params;

        fn.inferring = true;
        for (int i = 0; i < node.count; ++i) {
            AstNode& p = *node.child(static_cast<size_t>(i));
            sc.locals.insert(p.name);
            p.slot = SlotRef{0, i};
            p.scope_depth = sc.depth;
            m_types[&p] = params[static_cast<size_t>(i)];
            sc.env[p.name] = &p;
        }
        sc.next_offset = node.count;
        if (node.kind == NodeKind::FunctionDef) {
            collect_locals(node, static_cast<size_t>(node.count), sc.locals);
            for (size_t i = static_cast<size_t>(node.count); i < node.children.size(); ++i)
                collect_nonlocals(*node.child(i), sc);
            for (auto& n : sc.nonlocals) {
                for (int i = 0; i < node.count; ++i) {
                    if (node.child(static_cast<size_t>(i))->name == n)
                        fail(ErrorKind::Nonlocal, node.loc, "name '" + n + "' is parameter and nonlocal");
                }
                sc.locals.erase(n);
            }
        }

        Scope* saved_scope = m_scope;
        auto* saved_block = m_block;
        size_t saved_index = m_block_index;
        auto saved_siblings = std::move(m_siblings);
        m_siblings.clear();
        m_scope = &sc;
        if (node.kind == NodeKind::FunctionDef) {
            block(node.children, static_cast<size_t>(node.count));
        } else {
            m_block = nullptr;
            IType t = expr(*node.children.back(), true);
            SourceLoc loc = node.children.back()->loc.valid() ? node.children.back()->loc : node.loc;
            record_return(sc, t, loc);
        }
        m_scope = saved_scope;
        m_block = saved_block;
        m_block_index = saved_index;
        m_siblings = std::move(saved_siblings);
        fn.inferring = false;
        fn.inferred = true;

        auto& result = m_sigs[find(fn.sig)].result;
        if (!result && !sig_in_progress(fn.sig))
            result = itype(TypeTag::None);
    }

    static void collect_nonlocals(const AstNode& n, Scope& sc)
    {
        if (n.kind == NodeKind::Nonlocal) {
            sc.nonlocals.insert(n.name);
            return;
        }
        if (n.kind == NodeKind::FunctionDef || n.kind == NodeKind::LambdaExpr)
            return;
        for (auto& c : n.children)
            collect_nonlocals(*c, sc);
    }

    // -- expressions --------------------------------------------------------

    // A value that must be fully known.
    IType value(AstNode& e)
    {
        IType t = expr(e, false);
        return t;
    }

    IType set(AstNode& e, IType t)
    {
        m_types[&e] = t;
        return t;
    }

    [[noreturn]] void pending_error(const IType& t, SourceLoc loc)
    {
        type_error(loc, "cannot infer type of " + t.pending_name + "; annotate with int()/float()/str()");
    }

    IType check_known(const IType& t, const AstNode& e)
    {
        if (t.pending)
            pending_error(t, e.loc);
        return t;
    }

    IType expr(AstNode& e, bool allow_pending)
    {
        IType t = expr_inner(e);
        if (t.pending && !allow_pending)
            pending_error(t, e.loc);
        return t;
    }

    IType expr_inner(AstNode& e)
    {
        switch (e.kind) {
        case NodeKind::Literal: return set(e, literal(e, false));
        case NodeKind::Identifier: {
            AstNode* d = lookup(e.name, e.loc);
            bind_ident(e, d);
            return m_types.at(&e);
        }
        case NodeKind::ListLit: {
            if (e.children.empty())
                type_error(e.loc, "cannot infer the element type of an empty list");
            IType first = value(*e.child(0));
            for (auto& c : e.children) {
                IType t = c.get() == e.child(0) ? first : value(*c);
                if (t.is_lambda())
                    type_error(e.loc, "lists of functions are not supported");
                if (t.ft.is(TypeTag::Vector))
                    type_error(e.loc, "nested lists are not supported");
                if (!list_element_ok(t.ft))
                    type_error(e.loc, "a list cannot hold " + show(t));
                if (!(t.ft == first.ft))
                    type_error(e.loc, "list elements must share one type, found " + show(first) + " and " +
                                          show(t));
            }
            return set(e, IType{FrozenType::vector_of(first.ft)});
        }
        case NodeKind::BinOp: {
            IType l = value(*e.child(0));
            IType r = value(*e.child(1));
            return set(e, rule(binop_type(e.op, l.ft, r.ft, m_why), e, l, r));
        }
        case NodeKind::Compare: {
            IType l = value(*e.child(0));
            IType r = value(*e.child(1));
            return set(e, rule(compare_type(e.op, l.ft, r.ft, m_why), e, l, r));
        }
        case NodeKind::BoolOp: {
            IType l = value(*e.child(0));
            IType r = value(*e.child(1));
            return set(e, rule(boolop_type(e.op, l.ft, r.ft, m_why), e, l, r));
        }
        case NodeKind::UnOp: {
            AstNode& operand = *e.child(0);
            IType t;
            if (e.op == "-" && operand.kind == NodeKind::Literal && operand.lit.kind == LitKind::Int)
                t = set(operand, literal(operand, true));
            else
                t = value(operand);
            if (t.is_lambda())
                type_error(e.loc, "bad operand type for unary " + e.op + ": function");
            return set(e, rule(unop_type(e.op, t.ft, m_why), e, t, t));
        }
        case NodeKind::Index: {
            IType b = value(*e.child(0));
            IType i = value(*e.child(1));
            if (b.is_lambda())
                type_error(e.loc, "cannot index a function");
            return set(e, rule(index_type(b.ft, i.ft, m_why), e, b, i));
        }
        case NodeKind::Attr: {
            IType b = value(*e.child(0));
            return set(e, rule(attr_type(b.ft, m_why), e, b, b));
        }
        case NodeKind::Ref: {
            AstNode& id = *e.child(0);
            bind_ident(id, lookup(id.name, id.loc.valid() ? id.loc : e.loc));
            return set(e, itype(TypeTag::Int));
        }
        case NodeKind::Call:
            return e.is_builtin_call() ? builtin(e) : call(e);
        case NodeKind::LambdaExpr: {
            if (m_scope->depth + 1 > max_depth)
                type_error(e.loc, "functions nested deeper than " + std::to_string(max_depth) + " levels");
            FnInfo& fn = new_fn(e);
            return set(e, IType{FrozenType::unknown_lambda(), fn.sig});
        }
        default:
            fail(ErrorKind::Internal, e.loc, "unexpected expression kind " + std::string(node_kind_name(e.kind)));
        }
    }

    IType rule(const std::optional<FrozenType>& r, const AstNode& e, const IType& l, const IType& rr)
    {
        if (l.is_lambda() || rr.is_lambda())
            type_error(e.loc, "functions cannot be used as operands");
        if (!r)
            type_error(e.loc, m_why);
        return IType{*r};
    }

    IType literal(const AstNode& e, bool negated)
    {
        switch (e.lit.kind) {
        case LitKind::Int: {
            // The magnitude of the most negative int is only valid under unary minus.
            int64_t v = e.lit.ival;
            bool ok = v >= 0 && v <= m_opts.int_max();
            if (negated && v == (m_opts.int_width == 64 ? INT64_MIN : int64_t(1) << 31))
                ok = true;
            if (!ok)
                type_error(e.loc, "integer literal " + (v == INT64_MIN ? std::string("9223372036854775808")
                                                                       : std::to_string(v)) +
                                      " does not fit in a " + std::to_string(m_opts.int_width) + "-bit int");
            return itype(TypeTag::Int);
        }
        case LitKind::Real: return itype(TypeTag::Real);
        case LitKind::Imag: return itype(TypeTag::Complex);
        case LitKind::String: return itype(TypeTag::String);
        case LitKind::Bool: return itype(TypeTag::Bool);
        case LitKind::None: return itype(TypeTag::None);
        }
        return itype(TypeTag::None);
    }

    IType builtin(AstNode& e)
    {
        if (e.name == "id") {
            if (e.children.size() != 1 || e.child(0)->kind != NodeKind::Identifier)
                type_error(e.loc, "id() takes exactly one variable name");
            AstNode& id = *e.child(0);
            bind_ident(id, lookup(id.name, id.loc.valid() ? id.loc : e.loc));
            return set(e, itype(TypeTag::Int));
        }
        if (e.children.size() != 1)
            type_error(e.loc, e.name + "() takes exactly one argument");
        bool converts = e.name == "int" || e.name == "float" || e.name == "str";
        IType a = expr(*e.child(0), converts);
        if (a.is_lambda())
            type_error(e.loc, e.name + "() does not accept a function");
        if (a.pending) {
            m_annotated.push_back(&e);
            return set(e, itype(e.name == "int" ? TypeTag::Int : e.name == "float" ? TypeTag::Real
                                                                                   : TypeTag::String));
        }
        auto r = builtin_type(e.name, {a.ft}, m_why);
        if (!r)
            type_error(e.loc, m_why);
        return set(e, IType{*r});
    }

    IType call(AstNode& e)
    {
        AstNode& callee = *e.child(0);
        IType ct = value(callee);
        std::string callee_name = callee.kind == NodeKind::Identifier ? callee.name : "lambda";
        if (!ct.is_lambda())
            type_error(e.loc, "'" + callee_name + "' is " + show(ct) + ", not a function");
        int sig = find(ct.sig);
        size_t nargs = e.children.size() - 1;
        if (m_sigs[sig].arity != nargs)
            type_error(e.loc, callee_name + "() takes " + std::to_string(m_sigs[sig].arity) + " arguments, " +
                                  std::to_string(nargs) + " given");
        std::vector<IType> args;
        for (size_t i = 1; i < e.children.size(); ++i)
            args.push_back(value(*e.child(i)));
        sig = find(sig);
        if (!m_sigs[sig].params) {
            m_sigs[sig].params = args;
        } else {
            for (size_t i = 0; i < nargs; ++i) {
                IType expected = (*m_sigs[find(sig)].params)[i];
                if (!same(expected, args[i]))
                    type_error(e.child(i + 1)->loc.valid() ? e.child(i + 1)->loc : e.loc,
                               "argument " + std::to_string(i + 1) + " of " + callee_name + "() is " +
                                   show(args[i]) + " but an earlier call fixed it to " + show(expected));
            }
        }
        ensure_inferred(sig);
        sig = find(sig);
        if (m_sigs[sig].result) {
            m_calls.emplace_back(&e, sig);
            return set(e, *m_sigs[sig].result);
        }
        IType p;
        p.pending = true;
        p.sig = sig;
        p.pending_name = callee_name;
        m_calls.emplace_back(&e, sig);
        return set(e, p);
    }

    // -- completion ---------------------------------------------------------

    void finish(AstNode& root)
    {
        for (auto& [node, sig] : m_calls) {
            auto& r = m_sigs[find(sig)].result;
            if (!r)
                r = itype(TypeTag::None);
            m_types[node] = *r;
        }
        for (AstNode* conv : m_annotated) {
            FrozenType inner = frozen(m_types.at(conv->child(0)));
            if (!builtin_type(conv->name, {inner}, m_why))
                type_error(conv->loc, m_why);
        }
        for (auto& [node, t] : m_types)
            node->type = frozen(t);
        for (auto& fn : m_fns) {
            if (fn.inferred && fn.node->kind == NodeKind::FunctionDef) {
                const FrozenType& ft = *fn.node->type;
                if (!ft.result().is(TypeTag::None) &&
                    !block_terminates(*fn.node, static_cast<size_t>(fn.node->count), fn.node->children.size()))
                    type_error(fn.node->loc, "function '" + fn.node->name + "' can finish without returning a " +
                                                 to_string(ft.result()));
            }
        }
        // Bodies never reached by a call site carry no types; drop them.
        for (auto& fn : m_fns) {
            if (!fn.inferred) {
                fn.node->children.clear();
                fn.node->count = 0;
                fn.node->type = FrozenType::unknown_lambda();
            }
        }
        (void)root;
    }

    const CompileOptions& m_opts;
    std::deque<Scope> m_scopes;
    std::deque<FnInfo> m_fns;
    std::vector<Sig> m_sigs;
    std::unordered_map<AstNode*, IType> m_types;
    std::unordered_set<AstNode*> m_captured;
    std::unordered_set<AstNode*> m_loop_targets;
    std::vector<std::pair<AstNode*, int>> m_calls;
    std::vector<AstNode*> m_annotated;
    std::vector<std::pair<Scope*, std::map<std::string, AstNode*>>> m_siblings;
    Scope* m_scope = nullptr;
    std::vector<NodePtr>* m_block = nullptr;
    size_t m_block_index = 0;
    std::string m_why;
};

}  // namespace

void infer(AstNode& root, const CompileOptions& opts)
{
    Inferencer(opts).run(root);
}

// ---------------------------------------------------------------------------

namespace {

void resolve(AstNode& n, int depth)
{
    int inner = n.is_function() ? depth + 1 : depth;
    if (n.kind == NodeKind::Identifier && !n.native) {
        if (n.decl) {
            if (!n.decl->slot)
                fail(ErrorKind::Internal, n.loc, "binding of '" + n.name + "' has no slot");
            n.slot = SlotRef{depth - n.decl->scope_depth, n.decl->slot->offset};
            n.decl = nullptr;
        } else if (!n.slot) {
            fail(ErrorKind::Name, n.loc, "name '" + n.name + "' is not bound");
        }
    }
    for (auto& c : n.children)
        resolve(*c, inner);
}

}  // namespace

void resolve_scopes(AstNode& root)
{
    resolve(root, 0);
}

// ---------------------------------------------------------------------------

namespace {

void collect_slots(const AstNode& owner, size_t from, FrameLayout& layout, std::vector<Diagnostic>* diags);

void note_slot(const AstNode& d, FrameLayout& layout, std::vector<Diagnostic>* diags)
{
    if (d.native)
        return;
    if (!d.slot || !d.type) {
        if (diags)
            diags->push_back({d.loc, "declaration '" + d.name + "' has no type or slot"});
        return;
    }
    if (d.slot->level != 0) {
        if (diags)
            diags->push_back({d.loc, "declaration '" + d.name + "' must have level 0"});
        return;
    }
    size_t off = static_cast<size_t>(d.slot->offset);
    if (layout.slots.size() <= off)
        layout.slots.resize(off + 1);
    if (layout.slots[off].decl) {
        if (diags)
            diags->push_back({d.loc, "offset " + std::to_string(off) + " declared twice ('" +
                                         layout.slots[off].name + "' and '" + d.name + "')"});
        return;
    }
    layout.slots[off] = SlotInfo{d.name, *d.type, &d};
}

void collect_slots(const AstNode& owner, size_t from, FrameLayout& layout, std::vector<Diagnostic>* diags)
{
    for (size_t i = from; i < owner.children.size(); ++i) {
        const AstNode& c = *owner.child(i);
        if (c.kind == NodeKind::Declaration || c.kind == NodeKind::FunctionDef)
            note_slot(c, layout, diags);
        if (c.is_function())
            continue;
        if (c.kind == NodeKind::ForRange) {
            note_slot(*c.child(0), layout, diags);
            collect_slots(c, 4, layout, diags);
        } else if (c.kind == NodeKind::If || c.kind == NodeKind::While) {
            collect_slots(c, 1, layout, diags);
        }
    }
}

FrameLayout layout_of(const AstNode& owner, int depth, std::vector<Diagnostic>* diags)
{
    FrameLayout layout;
    layout.owner = &owner;
    layout.depth = depth;
    if (owner.is_function()) {
        for (int i = 0; i < owner.count; ++i)
            note_slot(*owner.child(static_cast<size_t>(i)), layout, diags);
    }
    if (owner.kind != NodeKind::LambdaExpr)
        collect_slots(owner, owner.kind == NodeKind::FunctionDef ? static_cast<size_t>(owner.count) : 0, layout,
                      diags);
    return layout;
}

void layouts_rec(const AstNode& n, int depth, std::vector<FrameLayout>& out)
{
    if (n.kind == NodeKind::Module || n.is_function()) {
        out.push_back(layout_of(n, depth, nullptr));
        for (auto& c : n.children)
            layouts_rec(*c, depth + 1, out);
        return;
    }
    for (auto& c : n.children)
        layouts_rec(*c, depth, out);
}

class FrozenChecker {
public:
    std::vector<Diagnostic> diags;

    void run(const AstNode& root)
    {
        if (root.kind != NodeKind::Module) {
            diags.push_back({root.loc, "root must be a module"});
            return;
        }
        function(root, 0, nullptr);
    }

private:
    struct Frame {
        FrameLayout layout;
        const AstNode* owner;
    };

    void report(const AstNode& n, const std::string& msg)
    {
        diags.push_back({n.loc.valid() ? n.loc : m_stmt_loc, msg});
    }

    void function(const AstNode& owner, int depth, const FrozenType* fn_type)
    {
        Frame f{layout_of(owner, depth, &diags), &owner};
        for (size_t i = 0; i < f.layout.slots.size(); ++i) {
            if (!f.layout.slots[i].decl)
                diags.push_back({owner.loc, "frame offsets are not dense: offset " + std::to_string(i) +
                                                " is unused"});
        }
        m_frames.push_back(std::move(f));
        const FrozenType* saved_fn = m_fn_type;
        m_fn_type = fn_type;
        if (owner.kind == NodeKind::LambdaExpr) {
            if (!owner.children.empty()) {
                const AstNode& body = *owner.children.back();
                FrozenType t = expr(body);
                if (fn_type && fn_type->signature_known && !(t == fn_type->result()))
                    report(body, "lambda body type " + to_string(t) + " differs from its signature");
            }
        } else {
            size_t from = owner.kind == NodeKind::FunctionDef ? static_cast<size_t>(owner.count) : 0;
            for (size_t i = from; i < owner.children.size(); ++i)
                stmt(*owner.child(i));
        }
        m_fn_type = saved_fn;
        m_frames.pop_back();
    }

    int depth() const { return static_cast<int>(m_frames.size()) - 1; }

    FrozenType ident(const AstNode& n)
    {
        if (n.native) {
            bool found = false;
            for (auto& it : m_native)
                found = found || it == n.name;
            if (!found)
                report(n, "native iterator '" + n.name + "' used outside its loop");
            if (!n.type || !n.type->is(TypeTag::Int))
                report(n, "native iterator '" + n.name + "' must be int");
            return FrozenType::scalar(TypeTag::Int);
        }
        if (!n.type || !n.slot) {
            report(n, "identifier '" + n.name + "' has no type or slot");
            return FrozenType::scalar(TypeTag::None);
        }
        int level = n.slot->level;
        if (level > depth()) {
            report(n, "identifier '" + n.name + "' refers past the module scope");
            return *n.type;
        }
        const FrameLayout& lay = m_frames[static_cast<size_t>(depth() - level)].layout;
        size_t off = static_cast<size_t>(n.slot->offset);
        if (off >= lay.slots.size() || !lay.slots[off].decl) {
            report(n, "identifier '" + n.name + "' refers to an undeclared slot " + to_string(*n.slot));
            return *n.type;
        }
        const SlotInfo& si = lay.slots[off];
        if (si.name != n.name)
            report(n, "identifier '" + n.name + "' resolves to slot of '" + si.name + "'");
        if (!(si.type == *n.type))
            report(n, "identifier '" + n.name + "' typed " + to_string(*n.type) + " but declared " +
                          to_string(si.type));
        return *n.type;
    }

    FrozenType annotated(const AstNode& n, const std::optional<FrozenType>& computed)
    {
        if (!n.type) {
            report(n, std::string(node_kind_name(n.kind)) + " expression has no type");
            return computed ? *computed : FrozenType::scalar(TypeTag::None);
        }
        if (!computed) {
            report(n, m_why);
        } else if (!(*computed == *n.type)) {
            report(n, std::string(node_kind_name(n.kind)) + " typed " + to_string(*n.type) + " but rules give " +
                          to_string(*computed));
        }
        return *n.type;
    }

    FrozenType expr(const AstNode& n)
    {
        switch (n.kind) {
        case NodeKind::Identifier:
            return ident(n);
        case NodeKind::Literal: {
            static constexpr TypeTag tags[] = {TypeTag::Int, TypeTag::Real, TypeTag::String,
                                               TypeTag::Bool, TypeTag::Complex, TypeTag::None};
            return annotated(n, FrozenType::scalar(tags[static_cast<int>(n.lit.kind)]));
        }
        case NodeKind::ListLit: {
            std::optional<FrozenType> elem;
            bool ok = !n.children.empty();
            for (auto& c : n.children) {
                FrozenType t = expr(*c);
                if (!elem)
                    elem = t;
                ok = ok && t == *elem && list_element_ok(t);
            }
            m_why = "list elements must share one storable type";
            return annotated(n, ok ? std::optional(FrozenType::vector_of(*elem)) : std::nullopt);
        }
        case NodeKind::BinOp: {
            FrozenType l = expr(*n.child(0)), r = expr(*n.child(1));
            return annotated(n, binop_type(n.op, l, r, m_why));
        }
        case NodeKind::Compare: {
            FrozenType l = expr(*n.child(0)), r = expr(*n.child(1));
            return annotated(n, compare_type(n.op, l, r, m_why));
        }
        case NodeKind::BoolOp: {
            FrozenType l = expr(*n.child(0)), r = expr(*n.child(1));
            return annotated(n, boolop_type(n.op, l, r, m_why));
        }
        case NodeKind::UnOp: {
            FrozenType t = expr(*n.child(0));
            return annotated(n, unop_type(n.op, t, m_why));
        }
        case NodeKind::Index: {
            FrozenType b = expr(*n.child(0)), i = expr(*n.child(1));
            return annotated(n, index_type(b, i, m_why));
        }
        case NodeKind::Attr: {
            FrozenType b = expr(*n.child(0));
            return annotated(n, attr_type(b, m_why));
        }
        case NodeKind::Ref: {
            expr(*n.child(0));
            return annotated(n, FrozenType::scalar(TypeTag::Int));
        }
        case NodeKind::LambdaExpr: {
            if (n.type)
                function(n, depth() + 1, &*n.type);
            return annotated(n, n.type);
        }
        case NodeKind::Call: {
            if (n.is_builtin_call()) {
                if (n.name == "id") {
                    if (n.children.size() != 1 || n.child(0)->kind != NodeKind::Identifier) {
                        m_why = "id() takes one variable name";
                        return annotated(n, std::nullopt);
                    }
                    expr(*n.child(0));
                    return annotated(n, FrozenType::scalar(TypeTag::Int));
                }
                std::vector<FrozenType> args;
                for (auto& c : n.children)
                    args.push_back(expr(*c));
                return annotated(n, builtin_type(n.name, args, m_why));
            }
            FrozenType c = expr(*n.child(0));
            std::vector<FrozenType> args;
            for (size_t i = 1; i < n.children.size(); ++i)
                args.push_back(expr(*n.child(i)));
            if (!c.is(TypeTag::Lambda) || !c.signature_known) {
                m_why = "callee has no known function signature";
                return annotated(n, std::nullopt);
            }
            if (c.arity() != args.size()) {
                m_why = "call arity does not match the signature";
                return annotated(n, std::nullopt);
            }
            for (size_t i = 0; i < args.size(); ++i) {
                if (!(args[i] == c.elems[i])) {
                    m_why = "argument " + std::to_string(i + 1) + " is " + to_string(args[i]) + ", expected " +
                            to_string(c.elems[i]);
                    return annotated(n, std::nullopt);
                }
            }
            return annotated(n, c.result());
        }
        default:
            report(n, "unexpected " + std::string(node_kind_name(n.kind)) + " in expression position");
            return FrozenType::scalar(TypeTag::None);
        }
    }

    void block(const AstNode& n, size_t from, size_t to)
    {
        for (size_t i = from; i < to; ++i)
            stmt(*n.child(i));
    }

    void stmt(const AstNode& s)
    {
        SourceLoc saved = m_stmt_loc;
        m_stmt_loc = s.loc;
        switch (s.kind) {
        case NodeKind::Declaration:
            break;
        case NodeKind::FunctionDef:
            if (!s.type || !s.slot)
                report(s, "function '" + s.name + "' has no type or slot");
            if (s.type)
                function(s, depth() + 1, &*s.type);
            break;
        case NodeKind::Assign: {
            FrozenType t = ident(*s.child(0));
            FrozenType v = expr(*s.child(1));
            if (!(t == v))
                report(s, "cannot assign " + to_string(v) + " to '" + s.child(0)->name + "' of type " +
                              to_string(t));
            if (s.child(0)->native)
                report(s, "assignment to native iterator '" + s.child(0)->name + "'");
            break;
        }
        case NodeKind::IndexAssign: {
            FrozenType t = ident(*s.child(0));
            FrozenType i = expr(*s.child(1));
            FrozenType v = expr(*s.child(2));
            if (!i.is_integral())
                report(s, "index must be int");
            if (!t.is(TypeTag::Vector) || !(t.elem() == v))
                report(s, "cannot store " + to_string(v) + " into " + to_string(t));
            break;
        }
        case NodeKind::AttrAssign: {
            FrozenType t = ident(*s.child(0));
            FrozenType v = expr(*s.child(1));
            if (!t.is(TypeTag::Complex) || !attr_store_ok(v))
                report(s, "cannot store " + to_string(v) + " into ." + s.name + " of " + to_string(t));
            break;
        }
        case NodeKind::If: {
            FrozenType c = expr(*s.child(0));
            if (!condition_ok(c))
                report(s, "condition must be bool, int or real, got " + to_string(c));
            block(s, 1, s.children.size());
            break;
        }
        case NodeKind::While: {
            FrozenType c = expr(*s.child(0));
            if (!condition_ok(c))
                report(s, "condition must be bool, int or real, got " + to_string(c));
            block(s, 1, s.children.size());
            break;
        }
        case NodeKind::ForRange: {
            for (size_t i = 1; i <= 3; ++i) {
                FrozenType t = expr(*s.child(i));
                if (!t.is_integral())
                    report(s, "range() arguments must be int");
            }
            const AstNode& target = *s.child(0);
            if (s.native != target.native)
                report(s, "loop and induction variable disagree on native form");
            if (target.native)
                m_native.push_back(target.name);
            block(s, 4, s.children.size());
            if (target.native)
                m_native.pop_back();
            break;
        }
        case NodeKind::Return: {
            FrozenType t = s.children.empty() ? FrozenType::scalar(TypeTag::None) : expr(*s.child(0));
            if (!m_fn_type)
                report(s, "return outside function");
            else if (m_fn_type->signature_known && !(t == m_fn_type->result()))
                report(s, "return type " + to_string(t) + " differs from signature " + to_string(*m_fn_type));
            break;
        }
        case NodeKind::Print:
            for (auto& a : s.children) {
                FrozenType t = expr(*a);
                if (!printable(t))
                    report(*a, "cannot print " + to_string(t));
            }
            break;
        case NodeKind::ExprStmt:
            expr(*s.child(0));
            break;
        case NodeKind::Nonlocal:
        case NodeKind::Pass:
            break;
        default:
            report(s, "unexpected " + std::string(node_kind_name(s.kind)) + " in statement position");
        }
        m_stmt_loc = saved;
    }

    std::vector<Frame> m_frames;
    std::vector<std::string> m_native;
    const FrozenType* m_fn_type = nullptr;
    SourceLoc m_stmt_loc;
    std::string m_why;
};

}  // namespace

std::vector<Diagnostic> check_frozen(const AstNode& root)
{
    FrozenChecker c;
    c.run(root);
    return c.diags;
}

std::vector<FrameLayout> frame_layouts(const AstNode& root)
{
    std::vector<FrameLayout> out;
    layouts_rec(root, 0, out);
    return out;
}

}  // namespace vpy
