#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vpy/diagnostics.hpp"
#include "vpy/types.hpp"

namespace vpy {

enum class NodeKind {
    Module,
    FunctionDef,
    LambdaExpr,
    Declaration,
    Identifier,
    Assign,
    IndexAssign,
    AttrAssign,
    If,
    While,
    ForRange,
    Return,
    Nonlocal,
    Pass,
    Print,
    ExprStmt,
    BinOp,
    UnOp,
    Compare,
    BoolOp,
    Call,
    Index,
    Attr,
    Ref,
    Literal,
    ListLit,
};

std::string_view node_kind_name(NodeKind k);
std::optional<NodeKind> node_kind_from_name(std::string_view name);

bool is_statement(NodeKind k);

enum class LitKind { Int, Real, String, Bool, Imag, None };

struct Literal {
    LitKind kind = LitKind::None;
    int64_t ival = 0;
    double rval = 0.0;  // real value, or the imaginary part of an Imag literal
    std::string sval;
    bool bval = false;

    static Literal of_int(int64_t v) { Literal l; l.kind = LitKind::Int; l.ival = v; return l; }
    static Literal of_real(double v) { Literal l; l.kind = LitKind::Real; l.rval = v; return l; }
    static Literal of_imag(double v) { Literal l; l.kind = LitKind::Imag; l.rval = v; return l; }
    static Literal of_bool(bool v) { Literal l; l.kind = LitKind::Bool; l.bval = v; return l; }
    static Literal of_string(std::string v) { Literal l; l.kind = LitKind::String; l.sval = std::move(v); return l; }
    static Literal none() { return Literal{}; }

    bool operator==(const Literal& o) const;
};

struct AstNode;
using NodePtr = std::unique_ptr<AstNode>;

/*
 * Child layouts by kind:
 *   Module        statements
 *   FunctionDef   `count` parameter Declarations, then body statements
 *   LambdaExpr    `count` parameter Declarations, then the body expression
 *   Assign        target Identifier, value
 *   IndexAssign   target Identifier, index, value
 *   AttrAssign    target Identifier, value          (name = real | imag)
 *   If            condition, `count` then-statements, else-statements
 *   While         condition, body statements
 *   ForRange      target Declaration, start, end, step, body statements
 *   Return        optional value
 *   Print         arguments
 *   ExprStmt      expression
 *   BinOp/Compare/BoolOp  lhs, rhs                  (op)
 *   UnOp          operand                           (op = - + not)
 *   Call          builtin: arguments (name = builtin); otherwise callee, arguments
 *   Index         base, index
 *   Attr          base                              (name = real | imag)
 *   Ref           Identifier
 *   ListLit       elements
 */
struct AstNode {
    NodeKind kind;
    SourceLoc loc;
    std::string name;
    std::string op;
    Literal lit;
    int count = 0;
    bool native = false;
    std::optional<FrozenType> type;
    std::optional<SlotRef> slot;
    std::vector<NodePtr> children;

    // Binding information carried from inference to scope resolution. Not
    // serialized; a deserialized tree relies on its explicit slots instead.
    AstNode* decl = nullptr;
    int scope_depth = 0;

    AstNode(NodeKind k, SourceLoc l) : kind(k), loc(l) {}

    AstNode* child(size_t i) const { return children.at(i).get(); }
    NodePtr& add(NodePtr c) { children.push_back(std::move(c)); return children.back(); }

    bool is_builtin_call() const { return kind == NodeKind::Call && !name.empty(); }
    // First body statement index for kinds that own a statement list.
    size_t body_start() const;
    bool is_function() const { return kind == NodeKind::FunctionDef || kind == NodeKind::LambdaExpr; }
};

NodePtr make_node(NodeKind k, SourceLoc loc = {});
NodePtr make_ident(std::string name, SourceLoc loc = {});
NodePtr make_literal(Literal lit, SourceLoc loc = {});
NodePtr clone(const AstNode& n);

// Compares everything that serializes. Expression locations are ignored unless
// `with_locs` is set, in which case statement and declaration locations count.
bool structurally_equal(const AstNode& a, const AstNode& b, bool with_locs = false);

// Renders source text that parses back to a structurally equal tree. Every
// compound expression is parenthesized.
std::string pretty_print(const AstNode& root);

size_t count_nodes(const AstNode& root);

// Pre-order walk. Returning false from the visitor skips the node's children.
void walk(AstNode& root, const std::function<bool(AstNode&)>& visit);
void walk(const AstNode& root, const std::function<bool(const AstNode&)>& visit);

bool is_builtin_name(std::string_view name);

}  // namespace vpy
