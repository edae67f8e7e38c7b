#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "vpy/ast_text.hpp"
#include "vpy/lexer.hpp"

using namespace vpy;
using vpy_test::throws_kind;

TEST(Parser, PassModule)
{
    auto root = parse(tokenize("pass\n"));
    ASSERT_EQ(root->kind, NodeKind::Module);
    ASSERT_EQ(root->children.size(), 1u);
    EXPECT_EQ(root->child(0)->kind, NodeKind::Pass);
}

TEST(Parser, UnpythonicListAccess)
{
    auto root = parse_source("arr = [\"a\",\"b\",\"c\"]\nfor i in range(0,len(arr)):\n  arr[i] = \"x\"\n");
    ASSERT_EQ(root->children.size(), 2u);
    const AstNode* assign = root->child(0);
    EXPECT_EQ(assign->kind, NodeKind::Assign);
    EXPECT_EQ(assign->child(0)->name, "arr");
    EXPECT_EQ(assign->child(1)->kind, NodeKind::ListLit);
    EXPECT_EQ(assign->child(1)->children.size(), 3u);

    const AstNode* loop = root->child(1);
    ASSERT_EQ(loop->kind, NodeKind::ForRange);
    EXPECT_EQ(loop->child(0)->kind, NodeKind::Declaration);
    EXPECT_EQ(loop->child(0)->name, "i");
    EXPECT_EQ(loop->child(1)->lit.ival, 0);
    const AstNode* end = loop->child(2);
    EXPECT_TRUE(end->is_builtin_call());
    EXPECT_EQ(end->name, "len");
    EXPECT_EQ(end->child(0)->name, "arr");
    EXPECT_EQ(loop->child(3)->lit.ival, 1);
    ASSERT_EQ(loop->children.size(), 5u);
    const AstNode* store = loop->child(4);
    EXPECT_EQ(store->kind, NodeKind::IndexAssign);
    EXPECT_EQ(store->child(0)->name, "arr");
    EXPECT_EQ(store->child(1)->name, "i");
    EXPECT_EQ(store->child(2)->lit.sval, "x");
}

TEST(Parser, UnbalancedParenIsParseErrorAtEof)
{
    std::string msg;
    EXPECT_TRUE(throws_kind([] { parse_source("x = ("); }, ErrorKind::Parse, &msg));
    EXPECT_NE(msg.find("expected"), std::string::npos) << msg;
}

TEST(Parser, ClassIsSubsetError)
{
    EXPECT_TRUE(throws_kind([] { parse_source("class A:\n    pass\n"); }, ErrorKind::Subset));
}

TEST(Parser, DecoratorIsSubsetError)
{
    EXPECT_TRUE(throws_kind([] { parse_source("@offload\ndef f():\n    pass\n"); }, ErrorKind::Subset));
}

TEST(Parser, PythonicForIsSubsetError)
{
    EXPECT_TRUE(throws_kind([] { parse_source("arr = [1]\nfor i in arr:\n    pass\n"); }, ErrorKind::Subset));
}

TEST(Parser, PrintStatementAndCallFormsAgree)
{
    auto a = parse_source("print \"Hello World\"\n");
    auto b = parse_source("print(\"Hello World\")\n");
    EXPECT_TRUE(structurally_equal(*a, *b));
    EXPECT_EQ(a->child(0)->kind, NodeKind::Print);
}

TEST(Parser, ImaginaryLiteral)
{
    auto root = parse_source("c = 1.5 + 4j\n");
    const AstNode* sum = root->child(0)->child(1);
    EXPECT_EQ(sum->child(1)->lit.kind, LitKind::Imag);
    EXPECT_EQ(sum->child(1)->lit.rval, 4.0);
}

TEST(Parser, RefBindsTighterThanCompareAndTakesOnlyNames)
{
    auto root = parse_source("r = &v == &w\n");
    const AstNode* cmp = root->child(0)->child(1);
    ASSERT_EQ(cmp->kind, NodeKind::Compare);
    EXPECT_EQ(cmp->child(0)->kind, NodeKind::Ref);
    EXPECT_EQ(cmp->child(0)->child(0)->kind, NodeKind::Identifier);
    EXPECT_EQ(cmp->child(1)->kind, NodeKind::Ref);
    EXPECT_TRUE(throws_kind([] { parse_source("r = &v[0]\n"); }, ErrorKind::Subset));
}

TEST(Parser, NodesCarryLocations)
{
    auto root = parse_source("x = 1\nif x:\n    y = x + 2\n");
    walk(*root, [](const AstNode& n) {
        if (n.kind != NodeKind::Module) {
            EXPECT_TRUE(n.loc.valid()) << node_kind_name(n.kind);
        }
        return true;
    });
    EXPECT_EQ(root->child(1)->loc.line, 2);
}

TEST(Parser, LocationsLieWithinSource)
{
    std::string src = "def f(a, b):\n    return a * b\n\nprint(f(2, 3), [1, 2][0])\n";
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < src.size()) {
        size_t nl = src.find('\n', start);
        lines.push_back(src.substr(start, nl - start));
        start = nl + 1;
    }
    auto root = parse_source(src);
    walk(*root, [&](const AstNode& n) {
        if (n.loc.valid()) {
            EXPECT_LE(n.loc.line, static_cast<int>(lines.size()));
            EXPECT_LE(n.loc.col, static_cast<int>(lines[n.loc.line - 1].size()));
        }
        return true;
    });
}

TEST(Parser, ReturnOutsideFunction)
{
    EXPECT_TRUE(throws_kind([] { parse_source("return 1\n"); }, ErrorKind::Parse));
}

TEST(Parser, StepArgumentOfRange)
{
    auto root = parse_source("for k in range(10, 0, -2):\n    pass\n");
    const AstNode* loop = root->child(0);
    EXPECT_EQ(loop->child(1)->lit.ival, 10);
    EXPECT_EQ(loop->child(2)->lit.ival, 0);
}

namespace {

// Random programs drawn from the subset grammar. They need not type-check;
// the property is purely syntactic.
class ProgramGen {
public:
    explicit ProgramGen(unsigned seed) : m_rng(seed) {}

    std::string module()
    {
        std::string out;
        int n = pick(1, 6);
        for (int i = 0; i < n; ++i)
            statement(out, 0, false, 3);
        return out;
    }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(m_rng); }
    bool chance(int pct) { return pick(1, 100) <= pct; }

    std::string name()
    {
        static const char* names[] = {"a", "b", "count", "x1", "flags", "val", "_t", "n"};
        return names[pick(0, 7)];
    }

    std::string literal()
    {
        switch (pick(0, 6)) {
        case 0: return std::to_string(pick(0, 100000));
        case 1: return std::to_string(pick(0, 999)) + "." + std::to_string(pick(0, 99));
        case 2: return "\"s" + std::to_string(pick(0, 9)) + (chance(30) ? "\\n\\\"q" : "") + "\"";
        case 3: return std::to_string(pick(1, 9)) + "j";
        case 4: return chance(50) ? "True" : "False";
        case 5: return "None";
        default: return std::to_string(pick(1, 99)) + "e" + std::to_string(pick(-3, 3));
        }
    }

    std::string expr(int depth)
    {
        if (depth <= 0)
            return chance(50) ? name() : literal();
        switch (pick(0, 13)) {
        case 0: return name();
        case 1: return literal();
        case 2: {
            static const char* ops[] = {"+", "-", "*", "/", "%", "**"};
            return "(" + expr(depth - 1) + " " + ops[pick(0, 5)] + " " + expr(depth - 1) + ")";
        }
        case 3: {
            static const char* ops[] = {"<", "<=", ">", ">=", "==", "!="};
            return "(" + expr(depth - 1) + " " + ops[pick(0, 5)] + " " + expr(depth - 1) + ")";
        }
        case 4: return "(" + expr(depth - 1) + (chance(50) ? " and " : " or ") + expr(depth - 1) + ")";
        case 5: {
            static const char* ops[] = {"-", "+", "not "};
            return "(" + std::string(ops[pick(0, 2)]) + expr(depth - 1) + ")";
        }
        case 6: return name() + "(" + args(depth - 1) + ")";
        case 7: {
            static const char* b[] = {"len", "int", "float", "str", "id"};
            return std::string(b[pick(0, 4)]) + "(" + expr(depth - 1) + ")";
        }
        case 8: return name() + "[" + expr(depth - 1) + "]";
        case 9: return name() + (chance(50) ? ".real" : ".imag");
        case 10: return "(&" + name() + ")";
        case 11: return "[" + args(depth - 1) + "]";
        case 12: return "(lambda p, q: " + expr(depth - 1) + ")";
        default: return name() + "(" + args(depth - 1) + ")(" + args(depth - 1) + ")";
        }
    }

    std::string args(int depth)
    {
        std::string s;
        int n = pick(0, 3);
        for (int i = 0; i < n; ++i)
            s += (i ? ", " : "") + expr(depth);
        return s;
    }

    void line(std::string& out, int indent, const std::string& text)
    {
        out += std::string(static_cast<size_t>(indent) * 4, ' ') + text + "\n";
    }

    void block(std::string& out, int indent, bool in_fn, int depth)
    {
        int n = pick(1, 3);
        for (int i = 0; i < n; ++i)
            statement(out, indent, in_fn, depth - 1);
    }

    void statement(std::string& out, int indent, bool in_fn, int depth)
    {
        int choice = pick(0, depth > 0 ? 13 : 6);
        switch (choice) {
        case 0: line(out, indent, name() + " = " + expr(3)); break;
        case 1: line(out, indent, name() + "[" + expr(2) + "] = " + expr(2)); break;
        case 2: line(out, indent, name() + (chance(50) ? ".real" : ".imag") + " = " + expr(2)); break;
        case 3: line(out, indent, "print(" + args(2) + ")"); break;
        case 4: line(out, indent, "pass"); break;
        case 5: line(out, indent, name() + "(" + args(2) + ")"); break;
        case 6:
            if (in_fn)
                line(out, indent, chance(50) ? "return " + expr(2) : "return");
            else
                line(out, indent, name() + " += " + expr(2));
            break;
        case 7:
        case 8:
            line(out, indent, "if " + expr(2) + ":");
            block(out, indent + 1, in_fn, depth);
            if (chance(40)) {
                line(out, indent, "elif " + expr(2) + ":");
                block(out, indent + 1, in_fn, depth);
            }
            if (chance(50)) {
                line(out, indent, "else:");
                block(out, indent + 1, in_fn, depth);
            }
            break;
        case 9:
            line(out, indent, "while " + expr(2) + ":");
            block(out, indent + 1, in_fn, depth);
            break;
        case 10: {
            std::string r = expr(1);
            if (chance(50))
                r = expr(1) + ", " + r;
            if (chance(30))
                r += ", " + std::to_string(pick(1, 4));
            line(out, indent, "for it in range(" + r + "):");
            block(out, indent + 1, in_fn, depth);
            break;
        }
        case 11:
        case 12: {
            line(out, indent, "def fn" + std::to_string(pick(0, 9)) + "(" + (chance(50) ? "p, q" : "") + "):");
            if (in_fn && chance(50))
                line(out, indent + 1, "nonlocal " + name());
            block(out, indent + 1, true, depth);
            break;
        }
        default: line(out, indent, name() + " -= " + expr(2)); break;
        }
    }

    std::mt19937 m_rng;
};

}  // namespace

TEST(Parser, PrettyPrintRoundTripOverGeneratedPrograms)
{
    int checked = 0;
    for (unsigned seed = 1; seed <= 500; ++seed) {
        ProgramGen gen(seed);
        std::string src = gen.module();
        NodePtr first;
        try {
            first = parse_source(src);
        } catch (const CompileError& e) {
            ADD_FAILURE() << "seed " << seed << " generated an unparsable program: " << e.what() << "\n" << src;
            continue;
        }
        std::string printed = pretty_print(*first);
        NodePtr second = parse(tokenize(printed));
        EXPECT_TRUE(structurally_equal(*first, *second)) << "seed " << seed << "\n" << src << "---\n" << printed;
        ++checked;
    }
    EXPECT_EQ(checked, 500);
}
