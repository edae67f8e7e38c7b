#include "vpy/parser.hpp"

#include <charconv>
#include <cstdlib>
#include <set>

namespace vpy {

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& toks) : m_toks(toks)
    {
        if (m_toks.empty() || m_toks.back().kind != TokenKind::Eof)
            fail(ErrorKind::Internal, {}, "token stream must end with EOF");
    }

    NodePtr module()
    {
        auto mod = make_node(NodeKind::Module, SourceLoc{1, 1});
        while (!at(TokenKind::Eof)) {
            if (at(TokenKind::Newline)) {
                advance();
                continue;
            }
            statement(mod->children);
        }
        return mod;
    }

private:
    // -- token helpers ------------------------------------------------------

    const Token& peek(size_t ahead = 0) const
    {
        size_t i = std::min(m_pos + ahead, m_toks.size() - 1);
        return m_toks[i];
    }
    bool at(TokenKind k) const { return peek().kind == k; }
    bool at_op(std::string_view op) const { return peek().is_op(op); }
    bool at_kw(std::string_view kw) const { return peek().is_keyword(kw); }
    const Token& advance()
    {
        const Token& t = m_toks[m_pos];
        if (m_pos + 1 < m_toks.size())
            ++m_pos;
        return t;
    }

    static std::string describe(const Token& t)
    {
        switch (t.kind) {
        case TokenKind::Newline: return "end of line";
        case TokenKind::Indent: return "indent";
        case TokenKind::Dedent: return "dedent";
        case TokenKind::Eof: return "end of input";
        case TokenKind::StrLit: return "string literal";
        default: return "'" + t.lexeme + "'";
        }
    }

    [[noreturn]] void expected(const std::string& what) const
    {
        fail(ErrorKind::Parse, peek().loc, "expected " + what + ", found " + describe(peek()));
    }

    [[noreturn]] static void subset(SourceLoc loc, const std::string& what)
    {
        fail(ErrorKind::Subset, loc, what + " is not supported in the vPython subset");
    }

    const Token& expect_op(std::string_view op)
    {
        if (!at_op(op))
            expected("'" + std::string(op) + "'");
        return advance();
    }

    const Token& expect_name(const char* what)
    {
        if (!at(TokenKind::Name)) {
            if (at(TokenKind::Keyword) && is_unsupported_keyword(peek().lexeme))
                subset(peek().loc, "keyword '" + peek().lexeme + "'");
            expected(what);
        }
        return advance();
    }

    void check_not_builtin(const Token& t, const char* role) const
    {
        if (is_builtin_name(t.lexeme))
            fail(ErrorKind::Subset, t.loc,
                 "builtin '" + t.lexeme + "' is reserved and cannot be used as " + role);
    }

    bool at_statement_end() const
    {
        return at(TokenKind::Newline) || at(TokenKind::Eof) || at_op(";");
    }

    // -- statements ---------------------------------------------------------

    void statement(std::vector<NodePtr>& out)
    {
        const Token& t = peek();
        if (t.kind == TokenKind::Indent)
            fail(ErrorKind::Parse, t.loc, "unexpected indent");
        if (t.is_op("@"))
            subset(t.loc, "decorator syntax");
        if (t.kind == TokenKind::Keyword) {
            if (is_unsupported_keyword(t.lexeme))
                subset(t.loc, "'" + t.lexeme + "' statement");
            if (t.lexeme == "if") {
                out.push_back(if_stmt());
                return;
            }
            if (t.lexeme == "while") {
                out.push_back(while_stmt());
                return;
            }
            if (t.lexeme == "for") {
                out.push_back(for_stmt());
                return;
            }
            if (t.lexeme == "def") {
                out.push_back(def_stmt());
                return;
            }
            if (t.lexeme == "elif" || t.lexeme == "else")
                fail(ErrorKind::Parse, t.loc, "'" + t.lexeme + "' without matching 'if'");
        }
        simple_statements(out);
    }

    void simple_statements(std::vector<NodePtr>& out)
    {
        while (true) {
            simple_statement(out);
            if (at_op(";")) {
                advance();
                if (at(TokenKind::Newline) || at(TokenKind::Eof))
                    break;
                continue;
            }
            break;
        }
        if (at(TokenKind::Eof))
            return;
        if (!at(TokenKind::Newline))
            expected("end of line");
        advance();
    }

    void simple_statement(std::vector<NodePtr>& out)
    {
        const Token& t = peek();
        SourceLoc loc = t.loc;
        if (t.is_keyword("pass")) {
            advance();
            out.push_back(make_node(NodeKind::Pass, loc));
            return;
        }
        if (t.is_keyword("return")) {
            if (m_function_depth == 0)
                fail(ErrorKind::Parse, loc, "'return' outside function");
            advance();
            auto r = make_node(NodeKind::Return, loc);
            if (!at_statement_end())
                r->add(expression());
            if (at_op(","))
                subset(peek().loc, "returning a tuple");
            out.push_back(std::move(r));
            return;
        }
        if (t.is_keyword("nonlocal")) {
            if (m_function_depth == 0)
                fail(ErrorKind::Nonlocal, loc, "nonlocal declaration not allowed at module level");
            advance();
            while (true) {
                const Token& name = expect_name("name after 'nonlocal'");
                auto n = make_node(NodeKind::Nonlocal, loc);
                n->name = name.lexeme;
                out.push_back(std::move(n));
                if (!at_op(","))
                    break;
                advance();
            }
            return;
        }
        if (t.is_keyword("print")) {
            out.push_back(print_stmt());
            return;
        }
        if (t.kind == TokenKind::Keyword && is_unsupported_keyword(t.lexeme))
            subset(loc, "'" + t.lexeme + "' statement");
        assignment_or_expression(out);
    }

    NodePtr print_stmt()
    {
        SourceLoc loc = advance().loc;
        auto p = make_node(NodeKind::Print, loc);
        if (at_statement_end())
            return p;
        if (at_op("(")) {
            size_t save = m_pos;
            advance();
            if (!at_op(")")) {
                call_arguments(*p);
            }
            expect_op(")");
            if (at_statement_end())
                return p;
            // Something like `print (a) + b`: reparse as the statement form.
            m_pos = save;
            p->children.clear();
        }
        if (at_op(">>"))
            subset(peek().loc, "print redirection");
        while (true) {
            p->add(expression());
            if (!at_op(","))
                break;
            advance();
            if (at_statement_end())
                subset(peek().loc, "trailing comma in print");
        }
        return p;
    }

    void assignment_or_expression(std::vector<NodePtr>& out)
    {
        SourceLoc loc = peek().loc;
        auto target = expression();
        if (at_op(","))
            subset(peek().loc, "tuple expression");
        if (at_op(":"))
            subset(peek().loc, "variable annotation");
        if (at_op("=")) {
            advance();
            auto value = expression();
            if (at_op("="))
                subset(peek().loc, "chained assignment");
            if (at_op(","))
                subset(peek().loc, "tuple expression");
            out.push_back(make_assignment(loc, std::move(target), std::move(value)));
            return;
        }
        if (at_op("+=") || at_op("-=")) {
            std::string op(1, peek().lexeme[0]);
            SourceLoc oploc = advance().loc;
            auto rhs = expression();
            auto current = clone(*target);
            auto bin = make_node(NodeKind::BinOp, oploc);
            bin->op = op;
            bin->add(std::move(current));
            bin->add(std::move(rhs));
            out.push_back(make_assignment(loc, std::move(target), std::move(bin)));
            return;
        }
        static const std::set<std::string_view> other_aug = {"*=", "/=", "%=", "**=", "//=", ">>=",
                                                             "<<=", "&=", "|=", "^="};
        if (at(TokenKind::Op) && other_aug.count(peek().lexeme))
            subset(peek().loc, "augmented assignment '" + peek().lexeme + "'");
        auto e = make_node(NodeKind::ExprStmt, loc);
        e->add(std::move(target));
        out.push_back(std::move(e));
    }

    NodePtr make_assignment(SourceLoc loc, NodePtr target, NodePtr value)
    {
        switch (target->kind) {
        case NodeKind::Identifier: {
            if (is_builtin_name(target->name))
                fail(ErrorKind::Subset, target->loc,
                     "builtin '" + target->name + "' is reserved and cannot be assigned");
            auto a = make_node(NodeKind::Assign, loc);
            a->add(std::move(target));
            a->add(std::move(value));
            return a;
        }
        case NodeKind::Index: {
            if (target->child(0)->kind != NodeKind::Identifier)
                subset(target->loc, "element assignment through a non-name expression");
            auto a = make_node(NodeKind::IndexAssign, loc);
            a->add(std::move(target->children[0]));
            a->add(std::move(target->children[1]));
            a->add(std::move(value));
            return a;
        }
        case NodeKind::Attr: {
            if (target->child(0)->kind != NodeKind::Identifier)
                subset(target->loc, "attribute assignment through a non-name expression");
            auto a = make_node(NodeKind::AttrAssign, loc);
            a->name = target->name;
            a->add(std::move(target->children[0]));
            a->add(std::move(value));
            return a;
        }
        case NodeKind::ListLit:
            subset(target->loc, "destructuring assignment");
        default:
            fail(ErrorKind::Parse, target->loc, "cannot assign to this expression");
        }
    }

    void suite(AstNode& owner)
    {
        expect_op(":");
        if (!at(TokenKind::Newline)) {
            simple_statements(owner.children);
            return;
        }
        advance();
        if (!at(TokenKind::Indent))
            expected("an indented block");
        advance();
        while (!at(TokenKind::Dedent) && !at(TokenKind::Eof)) {
            if (at(TokenKind::Newline)) {
                advance();
                continue;
            }
            statement(owner.children);
        }
        if (at(TokenKind::Dedent))
            advance();
    }

    NodePtr if_stmt()
    {
        SourceLoc loc = advance().loc;
        auto node = make_node(NodeKind::If, loc);
        node->add(expression());
        suite(*node);
        node->count = static_cast<int>(node->children.size()) - 1;
        if (at_kw("elif")) {
            node->add(if_stmt());
        } else if (at_kw("else")) {
            advance();
            suite(*node);
        }
        return node;
    }

    NodePtr while_stmt()
    {
        SourceLoc loc = advance().loc;
        auto node = make_node(NodeKind::While, loc);
        node->add(expression());
        suite(*node);
        if (at_kw("else"))
            subset(peek().loc, "while-else");
        return node;
    }

    NodePtr for_stmt()
    {
        SourceLoc loc = advance().loc;
        if (!at(TokenKind::Name))
            subset(peek().loc, "for-loop target other than a single name");
        const Token& target = advance();
        check_not_builtin(target, "a loop variable");
        if (at_op(","))
            subset(peek().loc, "for-loop target other than a single name");
        if (!at_kw("in"))
            expected("'in'");
        advance();
        if (!(peek().is(TokenKind::Name, "range") && peek(1).is_op("(")))
            subset(peek().loc, "iteration other than `for NAME in range(...)`");
        SourceLoc rloc = advance().loc;
        advance();
        auto node = make_node(NodeKind::ForRange, loc);
        auto decl = make_node(NodeKind::Declaration, target.loc);
        decl->name = target.lexeme;
        node->add(std::move(decl));
        std::vector<NodePtr> args;
        if (!at_op(")")) {
            while (true) {
                args.push_back(expression());
                if (!at_op(","))
                    break;
                advance();
                if (at_op(")"))
                    break;
            }
        }
        expect_op(")");
        if (args.empty() || args.size() > 3)
            fail(ErrorKind::Parse, rloc, "range() takes 1 to 3 arguments");
        if (args.size() == 1)
            args.insert(args.begin(), make_literal(Literal::of_int(0), rloc));
        if (args.size() == 2)
            args.push_back(make_literal(Literal::of_int(1), rloc));
        for (auto& a : args)
            node->add(std::move(a));
        suite(*node);
        if (at_kw("else"))
            subset(peek().loc, "for-else");
        return node;
    }

    NodePtr def_stmt()
    {
        SourceLoc loc = advance().loc;
        const Token& name = expect_name("function name");
        check_not_builtin(name, "a function name");
        auto node = make_node(NodeKind::FunctionDef, loc);
        node->name = name.lexeme;
        expect_op("(");
        parameters(*node, ")");
        expect_op(")");
        if (at_op("->"))
            subset(peek().loc, "return annotation");
        ++m_function_depth;
        suite(*node);
        --m_function_depth;
        return node;
    }

    void parameters(AstNode& fn, std::string_view close)
    {
        std::set<std::string> seen;
        while (!at_op(close)) {
            if (at_op("*") || at_op("**"))
                subset(peek().loc, "variadic parameters");
            const Token& p = expect_name("parameter name");
            check_not_builtin(p, "a parameter");
            if (!seen.insert(p.lexeme).second)
                fail(ErrorKind::Parse, p.loc, "duplicate parameter '" + p.lexeme + "'");
            if (at_op("="))
                subset(peek().loc, "default parameter values");
            if (at_op(":") && close == ")")
                subset(peek().loc, "parameter annotations");
            auto d = make_node(NodeKind::Declaration, p.loc);
            d->name = p.lexeme;
            fn.add(std::move(d));
            ++fn.count;
            if (!at_op(","))
                break;
            advance();
        }
    }

    // -- expressions --------------------------------------------------------

    NodePtr expression()
    {
        if (at_kw("lambda"))
            return lambda_expr();
        auto e = or_expr();
        if (at_kw("if"))
            subset(peek().loc, "conditional expression");
        return e;
    }

    NodePtr lambda_expr()
    {
        SourceLoc loc = advance().loc;
        auto node = make_node(NodeKind::LambdaExpr, loc);
        parameters(*node, ":");
        expect_op(":");
        ++m_function_depth;
        node->add(expression());
        --m_function_depth;
        return node;
    }

    NodePtr binary(NodeKind kind, std::string op, SourceLoc loc, NodePtr l, NodePtr r)
    {
        auto n = make_node(kind, loc);
        n->op = std::move(op);
        n->add(std::move(l));
        n->add(std::move(r));
        return n;
    }

    NodePtr or_expr()
    {
        auto l = and_expr();
        while (at_kw("or")) {
            SourceLoc loc = advance().loc;
            l = binary(NodeKind::BoolOp, "or", loc, std::move(l), and_expr());
        }
        return l;
    }

    NodePtr and_expr()
    {
        auto l = not_expr();
        while (at_kw("and")) {
            SourceLoc loc = advance().loc;
            l = binary(NodeKind::BoolOp, "and", loc, std::move(l), not_expr());
        }
        return l;
    }

    NodePtr not_expr()
    {
        if (at_kw("not")) {
            SourceLoc loc = advance().loc;
            auto n = make_node(NodeKind::UnOp, loc);
            n->op = "not";
            n->add(not_expr());
            return n;
        }
        return comparison();
    }

    bool at_compare_op() const
    {
        static const std::set<std::string_view> ops = {"<", "<=", ">", ">=", "==", "!="};
        return at(TokenKind::Op) && ops.count(peek().lexeme);
    }

    void reject_bitwise() const
    {
        static const std::set<std::string_view> ops = {"|", "^", "&", "<<", ">>", "~"};
        if (at(TokenKind::Op) && ops.count(peek().lexeme))
            subset(peek().loc, "bitwise operator '" + peek().lexeme + "'");
        if (at_kw("is"))
            subset(peek().loc, "'is' comparison");
        if (at_kw("in") || (at_kw("not") && peek(1).is_keyword("in")))
            subset(peek().loc, "membership test");
    }

    NodePtr comparison()
    {
        auto l = arith();
        reject_bitwise();
        if (!at_compare_op())
            return l;
        std::string op = peek().lexeme;
        SourceLoc loc = advance().loc;
        auto r = arith();
        reject_bitwise();
        if (at_compare_op())
            subset(peek().loc, "chained comparison");
        return binary(NodeKind::Compare, op, loc, std::move(l), std::move(r));
    }

    NodePtr arith()
    {
        auto l = term();
        while (at_op("+") || at_op("-")) {
            std::string op = peek().lexeme;
            SourceLoc loc = advance().loc;
            l = binary(NodeKind::BinOp, op, loc, std::move(l), term());
        }
        return l;
    }

    NodePtr term()
    {
        auto l = factor();
        while (true) {
            if (at_op("//"))
                subset(peek().loc, "floor division '//'");
            if (at_op("@"))
                subset(peek().loc, "matrix multiplication '@'");
            if (!(at_op("*") || at_op("/") || at_op("%")))
                break;
            std::string op = peek().lexeme;
            SourceLoc loc = advance().loc;
            l = binary(NodeKind::BinOp, op, loc, std::move(l), factor());
        }
        return l;
    }

    NodePtr factor()
    {
        if (at_op("-") || at_op("+")) {
            std::string op = peek().lexeme;
            SourceLoc loc = advance().loc;
            auto n = make_node(NodeKind::UnOp, loc);
            n->op = op;
            n->add(factor());
            return n;
        }
        if (at_op("&")) {
            SourceLoc loc = advance().loc;
            auto operand = power();
            if (operand->kind != NodeKind::Identifier)
                subset(loc, "'&' applied to anything but a variable name");
            auto n = make_node(NodeKind::Ref, loc);
            n->add(std::move(operand));
            return n;
        }
        if (at_op("~"))
            subset(peek().loc, "bitwise operator '~'");
        return power();
    }

    NodePtr power()
    {
        auto base = primary();
        if (at_op("**")) {
            SourceLoc loc = advance().loc;
            return binary(NodeKind::BinOp, "**", loc, std::move(base), factor());
        }
        return base;
    }

    void call_arguments(AstNode& call)
    {
        while (!at_op(")")) {
            if (at_op("*") || at_op("**"))
                subset(peek().loc, "argument unpacking");
            if (at(TokenKind::Name) && peek(1).is_op("="))
                subset(peek().loc, "keyword arguments");
            call.add(expression());
            if (at_kw("for"))
                subset(peek().loc, "generator expression");
            if (!at_op(","))
                break;
            advance();
        }
    }

    NodePtr primary()
    {
        auto e = atom();
        while (true) {
            if (at_op("(")) {
                SourceLoc loc = advance().loc;
                auto call = make_node(NodeKind::Call, loc);
                call->add(std::move(e));
                call_arguments(*call);
                expect_op(")");
                e = std::move(call);
            } else if (at_op("[")) {
                SourceLoc loc = advance().loc;
                auto idx = make_node(NodeKind::Index, loc);
                idx->add(std::move(e));
                if (at_op(":"))
                    subset(peek().loc, "slicing");
                idx->add(expression());
                if (at_op(":"))
                    subset(peek().loc, "slicing");
                if (at_op(","))
                    subset(peek().loc, "tuple index");
                expect_op("]");
                e = std::move(idx);
            } else if (at_op(".")) {
                SourceLoc loc = advance().loc;
                const Token& attr = expect_name("attribute name");
                if (attr.lexeme != "real" && attr.lexeme != "imag")
                    subset(attr.loc, "attribute '." + attr.lexeme + "' (only .real and .imag exist)");
                auto a = make_node(NodeKind::Attr, loc);
                a->name = attr.lexeme;
                a->add(std::move(e));
                e = std::move(a);
            } else {
                return e;
            }
        }
    }

    NodePtr builtin_call(const Token& name)
    {
        if (!at_op("("))
            fail(ErrorKind::Subset, name.loc,
                 "builtin '" + name.lexeme + "' is reserved and can only be called");
        if (name.lexeme == "range")
            fail(ErrorKind::Subset, name.loc, "range() is only supported as a for-loop iterable");
        SourceLoc loc = advance().loc;
        auto call = make_node(NodeKind::Call, loc);
        call->name = name.lexeme;
        call_arguments(*call);
        expect_op(")");
        return call;
    }

    NodePtr atom()
    {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Name: {
            advance();
            if (is_builtin_name(t.lexeme))
                return builtin_call(t);
            return make_ident(t.lexeme, t.loc);
        }
        case TokenKind::IntLit: {
            advance();
            int64_t v = 0;
            auto r = std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), v);
            if (r.ec != std::errc{} || r.ptr != t.lexeme.data() + t.lexeme.size()) {
                // 2**63 is accepted only as the operand of unary minus.
                if (t.lexeme == "9223372036854775808")
                    return make_literal(Literal::of_int(INT64_MIN), t.loc);
                fail(ErrorKind::Parse, t.loc, "integer literal " + t.lexeme + " is out of range");
            }
            return make_literal(Literal::of_int(v), t.loc);
        }
        case TokenKind::RealLit:
            advance();
            return make_literal(Literal::of_real(std::strtod(t.lexeme.c_str(), nullptr)), t.loc);
        case TokenKind::ImagLit:
            advance();
            return make_literal(Literal::of_imag(std::strtod(t.lexeme.c_str(), nullptr)), t.loc);
        case TokenKind::StrLit: {
            advance();
            std::string v = t.lexeme;
            while (at(TokenKind::StrLit))
                v += advance().lexeme;
            return make_literal(Literal::of_string(std::move(v)), t.loc);
        }
        case TokenKind::Keyword:
            if (t.lexeme == "True" || t.lexeme == "False") {
                advance();
                return make_literal(Literal::of_bool(t.lexeme == "True"), t.loc);
            }
            if (t.lexeme == "None") {
                advance();
                return make_literal(Literal::none(), t.loc);
            }
            if (t.lexeme == "lambda")
                return lambda_expr();
            if (is_unsupported_keyword(t.lexeme))
                subset(t.loc, "keyword '" + t.lexeme + "'");
            if (t.lexeme == "print")
                fail(ErrorKind::Parse, t.loc, "print is a statement and cannot appear in an expression");
            expected("expression");
        case TokenKind::Op:
            if (t.lexeme == "(") {
                advance();
                if (at_op(")"))
                    subset(t.loc, "tuple expression");
                auto e = expression();
                if (at_op(","))
                    subset(peek().loc, "tuple expression");
                if (at_kw("for"))
                    subset(peek().loc, "generator expression");
                expect_op(")");
                return e;
            }
            if (t.lexeme == "[") {
                advance();
                auto list = make_node(NodeKind::ListLit, t.loc);
                while (!at_op("]")) {
                    list->add(expression());
                    if (at_kw("for"))
                        subset(peek().loc, "list comprehension");
                    if (!at_op(","))
                        break;
                    advance();
                }
                expect_op("]");
                return list;
            }
            if (t.lexeme == "{")
                subset(t.loc, "dict and set literals");
            expected("expression");
        default:
            expected("expression");
        }
    }

    const std::vector<Token>& m_toks;
    size_t m_pos = 0;
    int m_function_depth = 0;
};

}  // namespace

NodePtr parse(const std::vector<Token>& tokens)
{
    return Parser(tokens).module();
}

NodePtr parse_source(std::string_view source)
{
    return parse(tokenize(source));
}

}  // namespace vpy
